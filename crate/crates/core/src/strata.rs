//! Multiplicity strata of coefficient space: tangent flats, osculating
//! flats of the curve `kappa`, tangent spaces and cones of `D_mu`, and the
//! tangency constructions built on them.

use crate::error::{Error, Result};
use crate::exact::{binomial, falling};
use crate::flat::AffineFlat;
use crate::linalg::{self, CMatrix, RANK_TOL};
use crate::partitions::{down1, gamma, reduced_resolutions, resolutions, Partition};
use crate::poly::{
    c, normal_vector, r, roots, DensePoly, Field, MonicPoly, RootConfig, Scalar,
};

/// Largest relative divisibility residual accepted for tangent-space membership.
pub const DIVISIBILITY_TOL: f64 = 1e-6;

/// Brute-force divisor enumeration is run up to this degree.
pub const BRUTE_FORCE_MAX_DEGREE: usize = 7;

/// Roots visible in the polynomial's field: all of them over C, only the
/// real ones over R.
fn visible_roots(p: &MonicPoly, tol: f64) -> Result<Vec<(Scalar, usize)>> {
    let rc = roots(p, tol)?;
    Ok(rc
        .entries()
        .iter()
        .copied()
        .filter(|(u, _)| p.field() == Field::Complex || u.im == 0.0)
        .collect())
}

/// Multiplicity partition of `P` together with the roots it was read from.
/// Over R only real roots count.
pub fn mu_of(p: &MonicPoly, tol: f64) -> Result<(Partition, RootConfig)> {
    let visible = visible_roots(p, tol)?;
    let rc = RootConfig::new(visible)?;
    Ok((Partition::new(rc.multiplicities()), rc))
}

#[derive(Clone, Debug, PartialEq)]
pub struct StratumLabel {
    pub mu: Partition,
    /// `(k, P in D_{d,k})` for `k = 1..=d`.
    pub dk_memberships: Vec<(usize, bool)>,
}

impl StratumLabel {
    pub fn new(mu: Partition, d: usize) -> Self {
        let top = mu.max_part();
        StratumLabel {
            dk_memberships: (1..=d).map(|k| (k, top >= k)).collect(),
            mu,
        }
    }

    /// `P` lies in the open stratum `D_{d,k}°`.
    pub fn in_open(&self, k: usize) -> bool {
        self.mu.max_part() == k
    }
}

pub fn stratify(p: &MonicPoly, tol: f64) -> Result<StratumLabel> {
    let (mu, _) = mu_of(p, tol)?;
    Ok(StratumLabel::new(mu, p.degree()))
}

fn check_multiplicity(d: usize, k: usize) -> Result<()> {
    if k == 0 || k > d {
        return Err(Error::InvalidInput(format!(
            "multiplicity {k} outside 1..={d}"
        )));
    }
    Ok(())
}

/// `T^u_{d,k}`: monic degree-`d` polynomials with a root of multiplicity at
/// least `k` at `u`.
pub fn tangent_flat(u: Scalar, d: usize, k: usize) -> Result<AffineFlat> {
    check_multiplicity(d, k)?;
    AffineFlat::from_root_conditions(d, &[(u, k)])
}

/// Coefficients of `(z - u)^d`.
pub fn kappa(u: Scalar, d: usize) -> Vec<Scalar> {
    kappa_derivative(u, d, 0)
}

/// `q`-th derivative in `u` of `kappa(u)`: component `k` is
/// `(-1)^k C(d,k) (k)_q u^{k-q}`.
pub fn kappa_derivative(u: Scalar, d: usize, q: usize) -> Vec<Scalar> {
    (1..=d)
        .map(|k| {
            if q > k {
                return r(0.0);
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            u.powu((k - q) as u32) * (sign * binomial(d, k) as f64 * falling(k, q) as f64)
        })
        .collect()
}

/// Integer version of [`kappa_derivative`].
pub fn kappa_derivative_exact(u: i128, d: usize, q: usize) -> Vec<i128> {
    (1..=d)
        .map(|k| {
            if q > k {
                return 0;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            sign * binomial(d, k) as i128 * falling(k, q) as i128 * u.pow((k - q) as u32)
        })
        .collect()
}

/// Integer version of [`normal_vector`].
pub fn normal_vector_exact(u: i128, d: usize, p: usize) -> Vec<i128> {
    (1..=d)
        .map(|k| {
            let e = d - k;
            if p > e {
                0
            } else {
                falling(e, p) as i128 * u.pow((e - p) as u32)
            }
        })
        .collect()
}

/// `kappa^{(q)}(u) . n^{(p)}(u)` in exact integer arithmetic.
pub fn osculating_pairing_exact(u: i128, d: usize, p: usize, q: usize) -> i128 {
    kappa_derivative_exact(u, d, q)
        .iter()
        .zip(normal_vector_exact(u, d, p))
        .map(|(a, b)| a * b)
        .sum()
}

/// The `m`-th osculating flat of `kappa` at `u`, cut out by the normals
/// `n^{(j)}(u)`, `j < d - m`, through `kappa(u)`.
pub fn osculating_flat(u: Scalar, d: usize, m: usize) -> Result<AffineFlat> {
    if m == 0 || m >= d {
        return Err(Error::InvalidInput(format!(
            "osculating order {m} outside 1..{d}"
        )));
    }
    let point = kappa(u, d);
    let constraints = (0..d - m)
        .map(|j| {
            let n = normal_vector(u, d, j);
            let offset = n.dot(&point);
            crate::flat::Constraint::new(n, offset)
        })
        .collect();
    AffineFlat::new(d, constraints)
}

/// Span form of the osculating flat: the point `kappa(u)` and the
/// directions `kappa^{(1)}(u), ..., kappa^{(m)}(u)`.
pub fn osculating_span(u: Scalar, d: usize, m: usize) -> (Vec<Scalar>, Vec<Vec<Scalar>>) {
    (
        kappa(u, d),
        (1..=m).map(|q| kappa_derivative(u, d, q)).collect(),
    )
}

#[derive(Clone, Debug)]
pub struct TangentSpace {
    pub flat: AffineFlat,
    /// `P^{down 1} = prod (z - u_i)^{mu_i - 1}`.
    pub divisor: DensePoly,
    pub mu: Partition,
    /// All roots simple: the stratum is open and the tangent space is `A^d`.
    pub full_space: bool,
    /// Distinct roots closer than ten times the clustering radius.
    pub ill_conditioned: bool,
}

/// Tangent space of `D_mu°` at a polynomial with the given roots: the
/// polynomials divisible by `prod (z - u_i)^{mu_i - 1}`.
pub fn tangent_space_of_config(rc: &RootConfig) -> Result<TangentSpace> {
    let d = rc.degree();
    let conditions: Vec<(Scalar, usize)> = rc
        .entries()
        .iter()
        .filter(|e| e.1 >= 2)
        .map(|&(u, m)| (u, m - 1))
        .collect();
    let flat = AffineFlat::from_root_conditions(d, &conditions)?;
    Ok(TangentSpace {
        full_space: flat.is_whole_space(),
        flat,
        divisor: rc.reduced_product(1),
        mu: Partition::new(rc.multiplicities()),
        ill_conditioned: false,
    })
}

pub fn tangent_space_dmu(p: &MonicPoly, tol: f64) -> Result<TangentSpace> {
    let rc = roots(p, tol)?;
    let mut space = tangent_space_of_config(&rc)?;
    space.ill_conditioned = rc.min_separation() < 10.0 * tol * p.norm_inf().max(1.0);
    Ok(space)
}

/// The flats `T^u_{d,k-1}` over the distinct roots `u` of multiplicity
/// exactly `k`.
pub fn tangent_cone(p: &MonicPoly, k: usize, tol: f64) -> Result<Vec<AffineFlat>> {
    let d = p.degree();
    check_multiplicity(d, k)?;
    let rc = roots(p, tol)?;
    let top = rc.multiplicities().first().copied().unwrap_or(0);
    if top < k {
        return Err(Error::NotInStratum {
            k,
            max_multiplicity: top,
        });
    }
    rc.entries()
        .iter()
        .filter(|e| e.1 == k)
        .map(|&(u, _)| AffineFlat::from_root_conditions(d, &[(u, k - 1)]))
        .collect()
}

#[derive(Clone, Debug)]
pub struct TangentHyperplane {
    pub root: Scalar,
    pub hyperplane: AffineFlat,
}

/// Reads the root off a hyperplane normal: scale the last component to 1
/// and take the second-to-last.
pub fn root_from_normal(normal: &[Scalar]) -> Result<Scalar> {
    match normal {
        [.., u, last] if last.norm() > 0.0 => Ok(u / last),
        _ => Err(Error::InvalidInput("normal has no usable last component".into())),
    }
}

/// Hyperplanes through `P` tangent to `D_{d,2}`, one per visible root.
pub fn solve_by_tangency(p: &MonicPoly, tol: f64) -> Result<Vec<TangentHyperplane>> {
    let d = p.degree();
    if d < 2 {
        return Err(Error::DegreeTooSmall { degree: d, min: 2 });
    }
    visible_roots(p, tol)?
        .into_iter()
        .map(|(u, _)| {
            Ok(TangentHyperplane {
                root: u,
                hyperplane: tangent_flat(u, d, 1)?,
            })
        })
        .collect()
}

/// Number of monic divisors of shape `kappa` of a polynomial with root
/// configuration `rc`, by enumerating exponent vectors.
pub fn count_divisors_of_shape(rc: &RootConfig, kappa: &Partition) -> u128 {
    fn walk(mults: &[usize], exps: &mut Vec<usize>, kappa: &Partition, count: &mut u128) {
        if exps.len() == mults.len() {
            if Partition::new(exps.clone()) == *kappa {
                *count += 1;
            }
            return;
        }
        for e in 0..=mults[exps.len()] {
            exps.push(e);
            walk(mults, exps, kappa, count);
            exps.pop();
        }
    }
    let mults: Vec<usize> = rc.entries().iter().map(|e| e.1).collect();
    let mut count = 0;
    walk(&mults, &mut Vec::new(), kappa, &mut count);
    count
}

/// `gamma(mu down 1, mu_Q)`, cross-checked against brute-force enumeration
/// for small degree.
pub fn tangent_count_for_config(rc: &RootConfig, mu: &Partition) -> Result<u128> {
    if mu.weight() != rc.degree() {
        return Err(Error::WeightMismatch {
            left: mu.weight(),
            right: rc.degree(),
        });
    }
    let kappa = down1(mu);
    let mu_q = Partition::new(rc.multiplicities());
    let count = gamma(&kappa, &mu_q);
    if rc.degree() <= BRUTE_FORCE_MAX_DEGREE {
        let brute = count_divisors_of_shape(rc, &kappa);
        if brute != count {
            return Err(Error::CrossCheckMismatch(format!(
                "gamma({kappa}, {mu_q}) = {count} but enumeration found {brute}"
            )));
        }
    }
    Ok(count)
}

/// Number of `|mu|`-dimensional tangent spaces of `D_mu` passing through `Q`.
pub fn tangent_count_through(q: &MonicPoly, mu: &Partition, tol: f64) -> Result<u128> {
    if mu.weight() != q.degree() {
        return Err(Error::WeightMismatch {
            left: mu.weight(),
            right: q.degree(),
        });
    }
    tangent_count_for_config(&roots(q, tol)?, mu)
}

fn root_gaps(rc: &RootConfig) -> Result<Vec<Scalar>> {
    let e = rc.entries();
    e.iter()
        .enumerate()
        .map(|(i, &(u, _))| {
            let gap: Scalar = e
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &(v, _))| u - v)
                .product();
            if gap == r(0.0) {
                Err(Error::RepeatedRoot)
            } else {
                Ok(gap)
            }
        })
        .collect()
}

/// Velocities `a_i = Qhat(u_i) / (tau mu_i Delta_i)` with `Qhat = Q / P^{down 1}`.
pub fn tangency_velocity_for_config(
    q: &MonicPoly,
    rc: &RootConfig,
    tau: Scalar,
) -> Result<Vec<Scalar>> {
    if tau == r(0.0) {
        return Err(Error::InvalidInput("tau must be nonzero".into()));
    }
    if q.degree() != rc.degree() {
        return Err(Error::WeightMismatch {
            left: q.degree(),
            right: rc.degree(),
        });
    }
    let (qhat, rem) = q.to_dense().divrem(&rc.reduced_product(1))?;
    let residual = rem.norm_inf() / q.norm_inf().max(1.0);
    if residual > DIVISIBILITY_TOL {
        return Err(Error::NotInTangentSpace { residual });
    }
    let gaps = root_gaps(rc)?;
    Ok(rc
        .entries()
        .iter()
        .zip(gaps)
        .map(|(&(u, m), gap)| qhat.eval(u) / (tau * m as f64 * gap))
        .collect())
}

pub fn tangency_velocity(
    q: &MonicPoly,
    p: &MonicPoly,
    tau: Scalar,
    tol: f64,
) -> Result<Vec<Scalar>> {
    tangency_velocity_for_config(q, &roots(p, tol)?, tau)
}

/// `P^{down 1} (prod (z - u_i) + tau sum mu_i a_i prod_{j != i} (z - u_j))`.
pub fn reconstruct_from_velocity(rc: &RootConfig, tau: Scalar, velocities: &[Scalar]) -> DensePoly {
    let entries = rc.entries();
    let distinct: Vec<Scalar> = entries.iter().map(|e| e.0).collect();
    let mut qhat = DensePoly::from_linear_factors(&distinct);
    for (i, (&(_, m), &a)) in entries.iter().zip(velocities).enumerate() {
        let others: Vec<Scalar> = distinct
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &v)| v)
            .collect();
        qhat = qhat.add(&DensePoly::from_linear_factors(&others).scale(tau * m as f64 * a));
    }
    rc.reduced_product(1).mul(&qhat)
}

/// The unique common point of the flats `T^{u_i}_{d,mu_i}`.
pub fn intersect_osculating(rc: &RootConfig) -> Result<MonicPoly> {
    let d = rc.degree();
    let flat = AffineFlat::from_root_conditions(d, rc.entries())?;
    if flat.dim() != 0 {
        return Err(Error::SingularSystem);
    }
    let x = linalg::solve(&flat.normal_matrix(), &flat.offsets()).ok_or(Error::SingularSystem)?;
    MonicPoly::complex(x.iter().copied().collect())
}

/// The codimension-2 flats `T^u_{d,2}` over the visible distinct roots.
pub fn horizon(p: &MonicPoly, tol: f64) -> Result<Vec<AffineFlat>> {
    let d = p.degree();
    if d < 2 {
        return Err(Error::DegreeTooSmall { degree: d, min: 2 });
    }
    visible_roots(p, tol)?
        .into_iter()
        .map(|(u, _)| tangent_flat(u, d, 2))
        .collect()
}

/// One limiting tangent flat together with the resolution producing it.
#[derive(Clone, Debug)]
pub struct LimitFlat {
    /// Distinct roots of `P1`, ordered by multiplicity then position; the
    /// `j`-th entry is the `j`-th part of `mu_{P1}`.
    pub parents: Vec<(Scalar, usize)>,
    /// A representative assignment of the parts of `mu` to the parents.
    pub children: Vec<Vec<usize>>,
    /// Exponent of `(z - x_j)` in the limiting divisor.
    pub exponents: Vec<usize>,
    pub divisor: DensePoly,
    pub flat: AffineFlat,
}

fn parents_by_multiplicity(rc: &RootConfig) -> Vec<(Scalar, usize)> {
    let mut parents = rc.entries().to_vec();
    parents.sort_by_key(|p| std::cmp::Reverse(p.1));
    parents
}

/// Limits of the tangent spaces of `D_mu°` along paths resolving the roots
/// of `P1`, one per class of reduced resolutions.
pub fn limit_tangent_flats_for_config(rc: &RootConfig, mu: &Partition) -> Result<Vec<LimitFlat>> {
    let d = rc.degree();
    let parents = parents_by_multiplicity(rc);
    let nu = Partition::new(rc.multiplicities());
    let classes = reduced_resolutions(&nu, mu)?;
    let full = resolutions(&nu, mu)?;
    classes
        .into_iter()
        .map(|class| {
            let children = full
                .iter()
                .find(|a| reduce_assignment(a) == class)
                .cloned()
                .ok_or_else(|| Error::CrossCheckMismatch("class without representative".into()))?;
            let exponents: Vec<usize> = class.iter().map(|c| c.iter().sum()).collect();
            let conditions: Vec<(Scalar, usize)> = parents
                .iter()
                .zip(&exponents)
                .filter(|(_, &e)| e > 0)
                .map(|(&(x, _), &e)| (x, e))
                .collect();
            let divisor_roots: Vec<Scalar> = conditions
                .iter()
                .flat_map(|&(x, e)| std::iter::repeat_n(x, e))
                .collect();
            Ok(LimitFlat {
                flat: AffineFlat::from_root_conditions(d, &conditions)?,
                divisor: DensePoly::from_linear_factors(&divisor_roots),
                parents: parents.clone(),
                children,
                exponents,
            })
        })
        .collect()
}

fn reduce_assignment(assignment: &[Vec<usize>]) -> Vec<Vec<usize>> {
    assignment
        .iter()
        .map(|cs| cs.iter().filter(|&&c| c >= 2).map(|c| c - 1).collect())
        .collect()
}

pub fn limit_tangent_flats(p1: &MonicPoly, mu: &Partition, tol: f64) -> Result<Vec<LimitFlat>> {
    if mu.weight() != p1.degree() {
        return Err(Error::WeightMismatch {
            left: mu.weight(),
            right: p1.degree(),
        });
    }
    limit_tangent_flats_for_config(&roots(p1, tol)?, mu)
}

/// Splits every parent root `x_j` into its children, placed at
/// `x_j + eps e^{i theta_k}` on a small circle; a lone child stays at `x_j`.
pub fn resolve_config(
    parents: &[(Scalar, usize)],
    children: &[Vec<usize>],
    eps: f64,
) -> Result<RootConfig> {
    let mut entries = Vec::new();
    for (&(x, _), kids) in parents.iter().zip(children) {
        if kids.len() == 1 {
            entries.push((x, kids[0]));
            continue;
        }
        let n = kids.len() as f64;
        for (k, &m) in kids.iter().enumerate() {
            let theta = std::f64::consts::TAU * k as f64 / n + 0.3;
            entries.push((x + c(theta.cos(), theta.sin()) * eps, m));
        }
    }
    RootConfig::new(entries)
}

/// Number of distinct roots, cross-checked against the numerical rank of
/// the Vandermonde matrix on the full root multiset.
pub fn distinct_root_stratum(p: &MonicPoly, tol: f64) -> Result<usize> {
    let rc = roots(p, tol)?;
    let multiset = rc.multiset();
    let d = multiset.len();
    let vandermonde = CMatrix::from_fn(d, d, |i, j| multiset[i].powu(j as u32));
    let rank = linalg::rank(&vandermonde, RANK_TOL);
    if rank != rc.distinct_count() {
        return Err(Error::CrossCheckMismatch(format!(
            "{} distinct roots but Vandermonde rank {rank}",
            rc.distinct_count()
        )));
    }
    Ok(rank)
}
