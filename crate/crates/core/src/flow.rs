//! The translation flow `Phi_t` on coefficient space.

use crate::error::{Error, Result};
use crate::exact::binomial;
use crate::linalg::{self, CMatrix};
use crate::partitions::Partition;
use crate::poly::{r, MonicPoly, Scalar};
use crate::strata::mu_of;
use crate::viete::discriminant;

/// `Phi_t`: translates every root by `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowMap {
    pub t: Scalar,
}

impl FlowMap {
    pub fn new(t: Scalar) -> Self {
        FlowMap { t }
    }

    pub fn apply(&self, p: &MonicPoly) -> MonicPoly {
        phi(p, self.t)
    }

    pub fn compose(&self, other: &FlowMap) -> FlowMap {
        FlowMap::new(self.t + other.t)
    }

    pub fn inverse(&self) -> FlowMap {
        FlowMap::new(-self.t)
    }
}

/// Coefficients of `P(z - t)`.
pub fn phi(p: &MonicPoly, t: Scalar) -> MonicPoly {
    p.shift(t)
}

/// Linear part of `Phi_t` in the `a`-basis: `L[k][j] = C(d-j, k-j) (-t)^{k-j}`
/// for `j <= k` (indices from 1).
pub fn linear_part(d: usize, t: Scalar) -> CMatrix {
    CMatrix::from_fn(d, d, |row, col| {
        let (k, j) = (row + 1, col + 1);
        if j > k {
            r(0.0)
        } else {
            (-t).powu((k - j) as u32) * binomial(d - j, k - j) as f64
        }
    })
}

/// Determinant of the linear part assembled from its diagonal, `C(d-j, 0)`.
pub fn linear_part_det_exact(d: usize) -> u128 {
    (1..=d).map(|j| binomial(d - j, 0)).product()
}

#[derive(Clone, Debug)]
pub struct InvariantReport {
    /// `|Delta(Phi_t P) - Delta(P)| / max(1, |Delta(P)|)`.
    pub discriminant_drift: f64,
    pub linear_part_det_exact: u128,
    pub linear_part_det_numeric: Scalar,
    pub mu_before: Partition,
    pub mu_after: Partition,
}

impl InvariantReport {
    pub fn mu_preserved(&self) -> bool {
        self.mu_before == self.mu_after
    }
}

pub fn check_invariants(p: &MonicPoly, t: Scalar, tol: f64) -> Result<InvariantReport> {
    let d = p.degree();
    if d < 2 {
        return Err(Error::DegreeTooSmall { degree: d, min: 2 });
    }
    let moved = phi(p, t);
    let before = discriminant(p)?;
    let after = discriminant(&moved)?;
    Ok(InvariantReport {
        discriminant_drift: (after - before).norm() / before.norm().max(1.0),
        linear_part_det_exact: linear_part_det_exact(d),
        linear_part_det_numeric: linalg::det(&linear_part(d, t)),
        mu_before: mu_of(p, tol)?.0,
        mu_after: mu_of(&moved, tol)?.0,
    })
}

/// Moves `P` onto the slice `a_1 = 0`. Returns `(P_red, t*)` with
/// `P_red = Phi_{t*}(P)`; since `Phi_t` sends `a_1` to `a_1 - d t`,
/// `t* = a_1 / d`.
pub fn reduce(p: &MonicPoly) -> (MonicPoly, Scalar) {
    let t_star = p.coeffs()[0] / p.degree() as f64;
    let mut reduced = phi(p, t_star);
    // the first coefficient vanishes identically; clear the rounding residue
    let mut coeffs = reduced.coeffs().to_vec();
    coeffs[0] = r(0.0);
    reduced = MonicPoly::new(coeffs, reduced.field()).expect("finite coefficients");
    (reduced, t_star)
}

#[derive(Clone, Debug)]
pub struct KTransform {
    /// Flow to `b = 0`, then restore `b`.
    pub constructive: MonicPoly,
    /// `(b, c - 5/9 b^2, d - 1/3 bc - 2/27 b^3)` as printed.
    pub literal: MonicPoly,
    /// Largest coefficient gap between the two.
    pub mismatch: f64,
}

/// The cubic map sending `D_3` to the `b`-axis and `D_2` to the cylinder
/// over the reduced cusp.
pub fn k_transform_d3(p: &MonicPoly) -> Result<KTransform> {
    if p.degree() != 3 {
        return Err(Error::InvalidInput(format!(
            "the cubic transform needs degree 3, got {}",
            p.degree()
        )));
    }
    let b = p.coeffs()[0];
    let (reduced, _) = reduce(p);
    let mut restored = reduced.coeffs().to_vec();
    restored[0] = b;
    let constructive = MonicPoly::new(restored, reduced.field())?;
    let (c, d) = (p.coeffs()[1], p.coeffs()[2]);
    let literal = MonicPoly::new(
        vec![
            b,
            c - b * b * (5.0 / 9.0),
            d - b * c / 3.0 - b * b * b * (2.0 / 27.0),
        ],
        p.field(),
    )?;
    let mismatch = constructive.max_abs_diff(&literal);
    Ok(KTransform {
        constructive,
        literal,
        mismatch,
    })
}

/// Closed form of the constructive cubic transform:
/// `(b, c - b^2/3, d - bc/3 + 2b^3/27)`.
pub fn k_transform_closed_form(b: Scalar, c: Scalar, d: Scalar) -> [Scalar; 3] {
    [b, c - b * b / 3.0, d - b * c / 3.0 + b * b * b * (2.0 / 27.0)]
}
