//! Dense univariate polynomials over the complex numbers (with an optional
//! real-field convention), the monic point of coefficient space, and the
//! numerical root finder with multiplicity clustering.
//!
//! Coefficient order follows the point-of-coefficient-space convention: a
//! monic polynomial `z^d + a_1 z^{d-1} + ... + a_d` is stored as
//! `[a_1, ..., a_d]`, leading one implicit.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exact::falling;

pub type Scalar = Complex64;

const EPS: f64 = f64::EPSILON;

/// Maximum number of simultaneous (Aberth) iterations.
pub const MAX_ROOT_ITERATIONS: usize = 500;

/// Default clustering tolerance used throughout the crate and the CLI.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Ground field convention.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    #[default]
    Complex,
}

pub fn c(re: f64, im: f64) -> Scalar {
    Complex64::new(re, im)
}

pub fn r(re: f64) -> Scalar {
    Complex64::new(re, 0.0)
}

fn is_finite(z: Scalar) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Canonical ordering of scalars: lexicographic on (re, im).
pub fn lex_cmp(a: &Scalar, b: &Scalar) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// A dense polynomial, highest-degree coefficient first. The zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePoly {
    coeffs: Vec<Scalar>,
}

impl DensePoly {
    /// Builds a polynomial, dropping exactly-zero leading coefficients.
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        let lead = coeffs.iter().position(|z| *z != Scalar::new(0.0, 0.0));
        match lead {
            Some(i) => DensePoly {
                coeffs: coeffs[i..].to_vec(),
            },
            None => DensePoly::zero(),
        }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        DensePoly::new(coeffs.iter().map(|&x| r(x)).collect())
    }

    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly {
            coeffs: vec![r(1.0)],
        }
    }

    /// `prod (z - u)` over the given roots, expanded one linear factor at a time.
    pub fn from_linear_factors<'a, I>(roots: I) -> Self
    where
        I: IntoIterator<Item = &'a Scalar>,
    {
        let mut coeffs = vec![r(1.0)];
        for &u in roots {
            coeffs.push(r(0.0));
            for k in (1..coeffs.len()).rev() {
                let prev = coeffs[k - 1];
                coeffs[k] -= u * prev;
            }
        }
        DensePoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.first().copied().unwrap_or_default()
    }

    /// Coefficient of `z^k`.
    pub fn coeff_of_power(&self, k: usize) -> Scalar {
        let n = self.coeffs.len();
        if k >= n {
            r(0.0)
        } else {
            self.coeffs[n - 1 - k]
        }
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Scalar) -> Scalar {
        self.coeffs.iter().fold(r(0.0), |acc, &a| acc * z + a)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Scalar) -> (Scalar, Scalar) {
        let mut p = r(0.0);
        let mut dp = r(0.0);
        for &a in &self.coeffs {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    }

    /// j-th formal derivative.
    pub fn derivative(&self, j: usize) -> DensePoly {
        let Some(n) = self.degree() else {
            return DensePoly::zero();
        };
        if j > n {
            return DensePoly::zero();
        }
        let coeffs = self.coeffs[..=n - j]
            .iter()
            .enumerate()
            .map(|(i, &a)| a * falling(n - i, j) as f64)
            .collect();
        DensePoly::new(coeffs)
    }

    pub fn scale(&self, s: Scalar) -> DensePoly {
        DensePoly::new(self.coeffs.iter().map(|&a| a * s).collect())
    }

    pub fn add(&self, other: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .rev()
            .map(|k| self.coeff_of_power(k) + other.coeff_of_power(k))
            .collect();
        DensePoly::new(coeffs)
    }

    pub fn sub(&self, other: &DensePoly) -> DensePoly {
        self.add(&other.scale(r(-1.0)))
    }

    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        if self.is_zero() || other.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![r(0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DensePoly::new(out)
    }

    pub fn pow(&self, e: usize) -> DensePoly {
        (0..e).fold(DensePoly::one(), |acc, _| acc.mul(self))
    }

    /// Long division: `self = divisor * quotient + remainder` with
    /// `deg remainder < deg divisor`.
    pub fn divrem(&self, divisor: &DensePoly) -> Result<(DensePoly, DensePoly)> {
        let Some(m) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let Some(n) = self.degree() else {
            return Ok((DensePoly::zero(), DensePoly::zero()));
        };
        if n < m {
            return Ok((DensePoly::zero(), self.clone()));
        }
        let lead = divisor.coeffs[0];
        let mut work = self.coeffs.clone();
        let mut quotient = vec![r(0.0); n - m + 1];
        for i in 0..=n - m {
            let q = work[i] / lead;
            quotient[i] = q;
            for (j, &dj) in divisor.coeffs.iter().enumerate() {
                work[i + j] -= q * dj;
            }
        }
        let remainder = work[n - m + 1..].to_vec();
        Ok((DensePoly::new(quotient), DensePoly::new(remainder)))
    }

    /// Coefficients of `self(z - t)`: the roots move by `+t`.
    pub fn shift(&self, t: Scalar) -> DensePoly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        if n < 2 {
            return self.clone();
        }
        let s = -t;
        // repeated synthetic division at s yields the Taylor coefficients of self(z + s)
        for i in 0..n - 1 {
            for j in 1..n - i {
                let prev = c[j - 1];
                c[j] += s * prev;
            }
        }
        DensePoly::new(c)
    }
}

/// A monic polynomial of degree `d`, i.e. a point `(a_1, ..., a_d)` of
/// coefficient space.
#[derive(Clone, Debug, PartialEq)]
pub struct MonicPoly {
    coeffs: Vec<Scalar>,
    field: Field,
}

impl MonicPoly {
    pub fn new(coeffs: Vec<Scalar>, field: Field) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DegreeTooSmall { degree: 0, min: 1 });
        }
        if let Some(bad) = coeffs.iter().find(|z| !is_finite(**z)) {
            return Err(Error::InvalidInput(format!("non-finite coefficient {bad}")));
        }
        if field == Field::Real && coeffs.iter().any(|z| z.im != 0.0) {
            return Err(Error::InvalidInput(
                "real-field polynomial has a non-real coefficient".into(),
            ));
        }
        Ok(MonicPoly { coeffs, field })
    }

    pub fn real(coeffs: &[f64]) -> Result<Self> {
        MonicPoly::new(coeffs.iter().map(|&x| r(x)).collect(), Field::Real)
    }

    pub fn complex(coeffs: Vec<Scalar>) -> Result<Self> {
        MonicPoly::new(coeffs, Field::Complex)
    }

    /// Normalizes a dense polynomial of positive degree by its leading coefficient.
    pub fn from_dense(p: &DensePoly, field: Field) -> Result<Self> {
        match p.degree() {
            None | Some(0) => Err(Error::DegreeTooSmall {
                degree: p.degree().unwrap_or(0),
                min: 1,
            }),
            Some(_) => {
                let lead = p.leading();
                let coeffs = p.coeffs()[1..].iter().map(|&a| a / lead).collect();
                MonicPoly::new(coeffs, Field::Complex).map(|m| m.with_field_lossy(field))
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Switches to the given field; moving to the real field drops the
    /// imaginary parts.
    pub fn with_field_lossy(mut self, field: Field) -> Self {
        if field == Field::Real {
            for a in &mut self.coeffs {
                a.im = 0.0;
            }
        }
        self.field = field;
        self
    }

    pub fn to_dense(&self) -> DensePoly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(r(1.0));
        coeffs.extend_from_slice(&self.coeffs);
        DensePoly::new(coeffs)
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Scalar) -> Scalar {
        self.coeffs.iter().fold(r(1.0), |acc, &a| acc * z + a)
    }

    /// Coefficients of `P(z - t)`. Stays in the real field only for real `t`.
    pub fn shift(&self, t: Scalar) -> MonicPoly {
        let shifted = self.to_dense().shift(t);
        let field = if self.field == Field::Real && t.im == 0.0 {
            Field::Real
        } else {
            Field::Complex
        };
        MonicPoly {
            coeffs: shifted.coeffs()[1..].to_vec(),
            field,
        }
    }

    pub fn max_abs_diff(&self, other: &MonicPoly) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Distinct roots with positive multiplicities, sorted by (re, im).
#[derive(Clone, Debug, PartialEq)]
pub struct RootConfig {
    entries: Vec<(Scalar, usize)>,
}

impl RootConfig {
    pub fn new(mut entries: Vec<(Scalar, usize)>) -> Result<Self> {
        if entries.iter().any(|&(_, m)| m == 0) {
            return Err(Error::InvalidInput("root multiplicity must be positive".into()));
        }
        if entries.iter().any(|&(u, _)| !is_finite(u)) {
            return Err(Error::InvalidInput("non-finite root".into()));
        }
        entries.sort_by(|a, b| lex_cmp(&a.0, &b.0));
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInput("roots must be distinct".into()));
        }
        Ok(RootConfig { entries })
    }

    /// Groups a multiset of roots by exact equality.
    pub fn from_multiset(roots: &[Scalar]) -> Result<Self> {
        let mut sorted = roots.to_vec();
        sorted.sort_by(lex_cmp);
        let mut entries: Vec<(Scalar, usize)> = Vec::new();
        for u in sorted {
            match entries.last_mut() {
                Some((v, m)) if *v == u => *m += 1,
                _ => entries.push((u, 1)),
            }
        }
        RootConfig::new(entries)
    }

    pub fn entries(&self) -> &[(Scalar, usize)] {
        &self.entries
    }

    pub fn degree(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn distinct_count(&self) -> usize {
        self.entries.len()
    }

    /// Multiplicities sorted non-increasing.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.entries.iter().map(|e| e.1).collect();
        m.sort_unstable_by(|a, b| b.cmp(a));
        m
    }

    /// Every root repeated according to its multiplicity.
    pub fn multiset(&self) -> Vec<Scalar> {
        self.entries
            .iter()
            .flat_map(|&(u, m)| std::iter::repeat_n(u, m))
            .collect()
    }

    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                best = best.min((a.0 - b.0).norm());
            }
        }
        best
    }

    /// `prod (z - u_i)^(mu_i - e)` for a fixed decrement `e`, skipping
    /// non-positive exponents.
    pub fn reduced_product(&self, decrement: usize) -> DensePoly {
        let roots: Vec<Scalar> = self
            .entries
            .iter()
            .flat_map(|&(u, m)| std::iter::repeat_n(u, m.saturating_sub(decrement)))
            .collect();
        DensePoly::from_linear_factors(&roots)
    }
}

/// A vector of coefficient space paired against `a = (a_1, ..., a_d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalVector(pub Vec<Scalar>);

impl NormalVector {
    pub fn components(&self) -> &[Scalar] {
        &self.0
    }

    pub fn dot(&self, a: &[Scalar]) -> Scalar {
        self.0.iter().zip(a).map(|(n, x)| n * x).sum()
    }
}

/// Expansion of `prod (z - u_i)^{mu_i}`.
pub fn from_roots(rc: &RootConfig) -> MonicPoly {
    let dense = DensePoly::from_linear_factors(&rc.multiset());
    MonicPoly {
        coeffs: dense.coeffs()[1..].to_vec(),
        field: Field::Complex,
    }
}

/// The j-th derivative, in `u`, of `n(u) = (u^{d-1}, ..., u, 1)`.
pub fn normal_vector(u: Scalar, d: usize, j: usize) -> NormalVector {
    NormalVector(
        (1..=d)
            .map(|k| {
                let e = d - k;
                if j > e {
                    r(0.0)
                } else {
                    u.powu((e - j) as u32) * falling(e, j) as f64
                }
            })
            .collect(),
    )
}

/// j-th derivative of `u^d` at `u`.
pub fn power_derivative(u: Scalar, d: usize, j: usize) -> Scalar {
    if j > d {
        r(0.0)
    } else {
        u.powu((d - j) as u32) * falling(d, j) as f64
    }
}

// ---------------------------------------------------------------------------
// Root finding

/// Normwise bound on the rounding error of evaluating `p` at `z`.
fn eval_error_bound(p: &DensePoly, z: Scalar) -> f64 {
    let n = p.coeffs().len();
    let scale = p.norm_inf().max(1.0);
    let az = z.norm();
    let powers: f64 = (0..n).fold(0.0, |acc, _| acc * az + 1.0);
    4.0 * n as f64 * EPS * scale * powers
}

/// Raw simultaneous iteration (Aberth-Ehrlich, Gauss-Seidel updates).
fn aberth(p: &MonicPoly) -> Result<Vec<Scalar>> {
    let d = p.degree();
    let dense = p.to_dense();
    if d == 1 {
        return Ok(vec![-p.coeffs()[0]]);
    }
    let radius = 1.0 + p.norm_inf();
    let mut z: Vec<Scalar> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Scalar::from_polar(radius, theta)
        })
        .collect();
    let mut frozen = vec![false; d];
    for _ in 0..MAX_ROOT_ITERATIONS {
        let mut active = false;
        for i in 0..d {
            if frozen[i] {
                continue;
            }
            let (val, der) = dense.eval_with_derivative(z[i]);
            if val.norm() <= eval_error_bound(&dense, z[i]) {
                frozen[i] = true;
                continue;
            }
            active = true;
            let s: Scalar = (0..d)
                .filter(|&j| j != i && z[j] != z[i])
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let denom = der - val * s;
            let step = if denom.norm() == 0.0 {
                // stationary point: nudge off it
                Scalar::from_polar(1e-3 * (1.0 + z[i].norm()), 0.7 + i as f64)
            } else {
                val / denom
            };
            z[i] -= step;
            if !is_finite(z[i]) {
                return Err(Error::RootFinderDiverged {
                    iterations: MAX_ROOT_ITERATIONS,
                });
            }
            if step.norm() <= EPS * z[i].norm() {
                frozen[i] = true;
            }
        }
        if !active {
            return Ok(z);
        }
    }
    if frozen.iter().all(|&f| f) {
        Ok(z)
    } else {
        Err(Error::RootFinderDiverged {
            iterations: MAX_ROOT_ITERATIONS,
        })
    }
}

/// Pairs every approximation with its closest conjugate so the multiset is
/// closed under conjugation; self-paired approximations become real.
fn symmetrize_conjugates(z: &mut [Scalar]) {
    let n = z.len();
    let partner: Vec<usize> = (0..n)
        .map(|i| {
            (0..n)
                .min_by(|&a, &b| {
                    (z[i] - z[a].conj())
                        .norm()
                        .total_cmp(&(z[i] - z[b].conj()).norm())
                })
                .unwrap_or(i)
        })
        .collect();
    for i in 0..n {
        let j = partner[i];
        if j == i {
            z[i].im = 0.0;
        } else if partner[j] == i && i < j {
            let avg = (z[i] + z[j].conj()) * 0.5;
            z[i] = avg;
            z[j] = avg.conj();
        }
    }
}

/// Groups approximations whose inclusion discs overlap. A connected
/// component of `m` discs holds exactly `m` roots of the polynomial.
fn inclusion_components(dense: &DensePoly, z: &[Scalar]) -> Vec<Vec<usize>> {
    let n = z.len();
    let radii: Vec<f64> = (0..n)
        .map(|i| {
            let val = dense.eval(z[i]).norm().max(eval_error_bound(dense, z[i]));
            let prod: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).norm())
                .product();
            if prod == 0.0 {
                f64::INFINITY
            } else {
                n as f64 * val / prod
            }
        })
        .collect();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut root = i;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = i;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for i in 0..n {
        for j in i + 1..n {
            if (z[i] - z[j]).norm() <= radii[i] + radii[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i);
    }
    groups
}

/// Newton iteration on `P^{(m-1)}`, whose root is simple at an m-fold root
/// of `P`. Falls back to `start` if the iteration wanders off.
fn polish_multiple(dense: &DensePoly, start: Scalar, m: usize, spread: f64) -> Scalar {
    let g = dense.derivative(m - 1);
    let mut x = start;
    for _ in 0..8 {
        let (val, der) = g.eval_with_derivative(x);
        if der.norm() == 0.0 {
            break;
        }
        let step = val / der;
        if !is_finite(step) {
            break;
        }
        x -= step;
        if step.norm() <= EPS * (1.0 + x.norm()) {
            break;
        }
    }
    if is_finite(x) && (x - start).norm() <= spread.max(1e-12 * (1.0 + start.norm())) {
        x
    } else {
        start
    }
}

fn polish_simple(dense: &DensePoly, start: Scalar) -> Scalar {
    let mut x = start;
    let mut best = dense.eval(x).norm();
    for _ in 0..3 {
        let (val, der) = dense.eval_with_derivative(x);
        if der.norm() == 0.0 {
            break;
        }
        let cand = x - val / der;
        let cand_val = dense.eval(cand).norm();
        if !is_finite(cand) || cand_val >= best {
            break;
        }
        x = cand;
        best = cand_val;
    }
    x
}

/// All roots of `p`, clustered into distinct roots with multiplicities.
///
/// The raw approximations come from a simultaneous iteration started on a
/// circle of radius `1 + |P|_inf`. Approximations whose inclusion discs
/// overlap are first merged into numerical multiple roots; the resulting
/// centers are then merged by single linkage at radius
/// `tol * max(1, |P|_inf)`. In the real field, approximations are made
/// conjugation-symmetric before any clustering.
pub fn roots(p: &MonicPoly, tol: f64) -> Result<RootConfig> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let dense = p.to_dense();
    let mut z = aberth(p)?;
    if p.field() == Field::Real {
        symmetrize_conjugates(&mut z);
    }

    // numerical multiple roots
    let mut centers: Vec<(Scalar, usize)> = inclusion_components(&dense, &z)
        .into_iter()
        .map(|group| {
            let m = group.len();
            let mean = group.iter().map(|&i| z[i]).sum::<Scalar>() / m as f64;
            if m == 1 {
                (mean, 1)
            } else {
                let spread = group
                    .iter()
                    .map(|&i| (z[i] - mean).norm())
                    .fold(0.0, f64::max);
                (polish_multiple(&dense, mean, m, spread), m)
            }
        })
        .collect();

    // single linkage at the user tolerance, multiplicity-weighted centers
    let radius = tol * p.norm_inf().max(1.0);
    loop {
        let mut merged = false;
        'scan: for i in 0..centers.len() {
            for j in i + 1..centers.len() {
                if (centers[i].0 - centers[j].0).norm() <= radius {
                    let (a, ma) = centers[i];
                    let (b, mb) = centers.remove(j);
                    let m = ma + mb;
                    centers[i] = ((a * ma as f64 + b * mb as f64) / m as f64, m);
                    merged = true;
                    break 'scan;
                }
            }
        }
        if !merged {
            break;
        }
    }

    for (u, m) in centers.iter_mut() {
        if *m == 1 {
            *u = polish_simple(&dense, *u);
        }
        if p.field() == Field::Real && u.im.abs() <= radius {
            u.im = 0.0;
        }
    }
    // polishing can in principle collapse two centers onto one value
    let mut entries: Vec<(Scalar, usize)> = Vec::new();
    centers.sort_by(|a, b| lex_cmp(&a.0, &b.0));
    for (u, m) in centers {
        match entries.last_mut() {
            Some((v, mv)) if *v == u => *mv += m,
            _ => entries.push((u, m)),
        }
    }
    RootConfig::new(entries)
}
