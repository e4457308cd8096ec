//! Affine subspaces of coefficient space in constraint form.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, RANK_TOL};
use crate::poly::{normal_vector, power_derivative, r, DensePoly, NormalVector, Scalar};

/// Relative residual under which a point counts as lying on a flat.
pub const CONTAINMENT_TOL: f64 = 1e-8;

/// `normal . a = offset`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub normal: NormalVector,
    pub offset: Scalar,
}

impl Constraint {
    pub fn new(normal: NormalVector, offset: Scalar) -> Self {
        Constraint { normal, offset }
    }

    /// `|n.a - o|` scaled by the magnitude of the terms involved.
    pub fn residual(&self, point: &[Scalar]) -> f64 {
        let mut value = -self.offset;
        let mut magnitude = self.offset.norm();
        for (n, a) in self.normal.components().iter().zip(point) {
            value += n * a;
            magnitude += n.norm() * a.norm();
        }
        value.norm() / magnitude.max(1.0)
    }
}

/// An affine subspace `{a : N a = o}` of `A^d` with independent rows.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFlat {
    ambient_dim: usize,
    constraints: Vec<Constraint>,
}

impl AffineFlat {
    /// Validates lengths and linear independence of the normals.
    pub fn new(ambient_dim: usize, constraints: Vec<Constraint>) -> Result<Self> {
        if let Some(bad) = constraints
            .iter()
            .find(|c| c.normal.components().len() != ambient_dim)
        {
            return Err(Error::InvalidInput(format!(
                "normal of length {} in ambient dimension {ambient_dim}",
                bad.normal.components().len()
            )));
        }
        let flat = AffineFlat {
            ambient_dim,
            constraints,
        };
        if linalg::rank(&flat.normal_matrix(), RANK_TOL) != flat.constraints.len() {
            return Err(Error::SingularSystem);
        }
        Ok(flat)
    }

    pub fn whole_space(ambient_dim: usize) -> Self {
        AffineFlat {
            ambient_dim,
            constraints: Vec::new(),
        }
    }

    /// Monic degree-`d` polynomials with root `u_i` of multiplicity at least
    /// `k_i`: constraints `Q^{(j)}(u_i) = 0` for `j < k_i`.
    pub fn from_root_conditions(d: usize, conditions: &[(Scalar, usize)]) -> Result<Self> {
        let constraints = conditions
            .iter()
            .flat_map(|&(u, k)| {
                (0..k).map(move |j| {
                    Constraint::new(normal_vector(u, d, j), -power_derivative(u, d, j))
                })
            })
            .collect();
        AffineFlat::new(d, constraints)
    }

    /// Monic degree-`d` polynomials divisible by `divisor`, written as the
    /// vanishing of every coefficient of the remainder.
    pub fn divisible_by(d: usize, divisor: &DensePoly) -> Result<Self> {
        let Some(m) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        if m > d {
            return Err(Error::InvalidInput(format!(
                "divisor of degree {m} exceeds ambient degree {d}"
            )));
        }
        // remainders of z^{d-k} for k = 0..d
        let rems: Vec<DensePoly> = (0..=d)
            .map(|k| {
                let mut mono = vec![r(0.0); d - k + 1];
                mono[0] = r(1.0);
                DensePoly::new(mono).divrem(divisor).map(|(_, rem)| rem)
            })
            .collect::<Result<_>>()?;
        let constraints = (0..m)
            .map(|power| {
                let normal = (1..=d).map(|k| rems[k].coeff_of_power(power)).collect();
                Constraint::new(NormalVector(normal), -rems[0].coeff_of_power(power))
            })
            .collect();
        AffineFlat::new(d, constraints)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim - self.constraints.len()
    }

    pub fn is_whole_space(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn normal_matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.constraints.len(), self.ambient_dim, |i, j| {
            self.constraints[i].normal.components()[j]
        })
    }

    pub fn offsets(&self) -> CVector {
        CVector::from_iterator(
            self.constraints.len(),
            self.constraints.iter().map(|c| c.offset),
        )
    }

    /// Largest scaled constraint residual at `point`.
    pub fn residual(&self, point: &[Scalar]) -> f64 {
        self.constraints
            .iter()
            .map(|c| c.residual(point))
            .fold(0.0, f64::max)
    }

    pub fn contains(&self, point: &[Scalar], tol: f64) -> bool {
        self.residual(point) <= tol
    }

    /// The point of the flat closest to the origin.
    pub fn base_point(&self) -> Vec<Scalar> {
        linalg::min_norm_solve(&self.normal_matrix(), &self.offsets(), RANK_TOL)
            .iter()
            .copied()
            .collect()
    }

    /// Orthonormal basis of the direction space, as columns.
    pub fn direction_basis(&self) -> CMatrix {
        linalg::null_space(&self.normal_matrix(), RANK_TOL)
    }

    /// Points `base + B c` with complex `c` drawn uniformly from the unit box.
    pub fn sample_points<R: Rng>(&self, count: usize, rng: &mut R) -> Vec<Vec<Scalar>> {
        let base = CVector::from_vec(self.base_point());
        let basis = self.direction_basis();
        (0..count)
            .map(|_| {
                let coeffs = CVector::from_fn(basis.ncols(), |_, _| {
                    Scalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                });
                (&base + &basis * coeffs).iter().copied().collect()
            })
            .collect()
    }

    /// Stacked constraints with dependent rows dropped; fails when the two
    /// flats do not meet.
    pub fn intersect(&self, other: &AffineFlat) -> Result<AffineFlat> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::InvalidInput("ambient dimensions differ".into()));
        }
        let mut kept: Vec<Constraint> = Vec::new();
        let all: Vec<&Constraint> = self.constraints.iter().chain(&other.constraints).collect();
        for c in &all {
            let mut trial = kept.clone();
            trial.push((*c).clone());
            let probe = AffineFlat {
                ambient_dim: self.ambient_dim,
                constraints: trial.clone(),
            };
            if linalg::rank(&probe.normal_matrix(), RANK_TOL) == trial.len() {
                kept = trial;
            }
        }
        let flat = AffineFlat {
            ambient_dim: self.ambient_dim,
            constraints: kept,
        };
        let p = flat.base_point();
        if all.iter().any(|c| c.residual(&p) > CONTAINMENT_TOL) {
            return Err(Error::SingularSystem);
        }
        Ok(flat)
    }

    /// Every sample point of `self` lies on `other`.
    pub fn is_contained_in(&self, other: &AffineFlat, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_points(self.ambient_dim.max(1), &mut rng)
            .iter()
            .all(|p| other.contains(p, CONTAINMENT_TOL))
    }
}

/// Equal dimension plus mutual containment of `d` sampled points each way.
pub fn flat_equal(a: &AffineFlat, b: &AffineFlat) -> bool {
    a.ambient_dim == b.ambient_dim
        && a.dim() == b.dim()
        && a.is_contained_in(b, 0x5eed)
        && b.is_contained_in(a, 0x5eed + 1)
}

/// Distance between two flats of equal dimension: spectral distance of the
/// direction projectors plus the relative gap between their base points.
pub fn flat_distance(a: &AffineFlat, b: &AffineFlat) -> f64 {
    let pa = linalg::projector(&a.direction_basis());
    let pb = linalg::projector(&b.direction_basis());
    let xa = CVector::from_vec(a.base_point());
    let xb = CVector::from_vec(b.base_point());
    linalg::norm2(&(pa - pb)) + (&xa - &xb).norm() / xa.norm().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisible_by_matches_root_conditions() {
        let divisor = DensePoly::from_linear_factors(&[r(1.0), r(1.0), r(2.0)]);
        let a = AffineFlat::divisible_by(5, &divisor).unwrap();
        let b = AffineFlat::from_root_conditions(5, &[(r(1.0), 2), (r(2.0), 1)]).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(flat_equal(&a, &b));
        assert!(flat_distance(&a, &b) < 1e-10);
    }

    #[test]
    fn dependent_constraints_are_rejected() {
        let n = normal_vector(r(1.0), 3, 0);
        let err = AffineFlat::new(3, vec![Constraint::new(n.clone(), r(0.0)), Constraint::new(n, r(1.0))]);
        assert_eq!(err, Err(Error::SingularSystem));
    }

    #[test]
    fn intersection_drops_redundant_rows() {
        let a = AffineFlat::from_root_conditions(4, &[(r(1.0), 2)]).unwrap();
        let b = AffineFlat::from_root_conditions(4, &[(r(1.0), 1), (r(3.0), 1)]).unwrap();
        let both = a.intersect(&b).unwrap();
        assert_eq!(both.dim(), 1);
        let want = AffineFlat::from_root_conditions(4, &[(r(1.0), 2), (r(3.0), 1)]).unwrap();
        assert!(flat_equal(&both, &want));
    }

    #[test]
    fn parallel_flats_do_not_meet() {
        let n = normal_vector(r(1.0), 2, 0);
        let a = AffineFlat::new(2, vec![Constraint::new(n.clone(), r(0.0))]).unwrap();
        let b = AffineFlat::new(2, vec![Constraint::new(n, r(1.0))]).unwrap();
        assert_eq!(a.intersect(&b), Err(Error::SingularSystem));
    }
}
