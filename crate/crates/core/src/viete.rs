//! The Viete map from roots to coefficients, its Jacobian and the
//! discriminant.

use crate::error::{Error, Result};
use crate::flat::AffineFlat;
use crate::linalg::{self, CMatrix};
use crate::poly::{lex_cmp, r, DensePoly, Field, MonicPoly, Scalar};
use crate::strata;

/// `a_k = (-1)^k sigma_k(roots)`. Roots are sorted first so the summation
/// order, and hence the result, does not depend on the input order.
pub fn viete_map(roots: &[Scalar]) -> Result<MonicPoly> {
    let mut sorted = roots.to_vec();
    sorted.sort_by(lex_cmp);
    let dense = DensePoly::from_linear_factors(&sorted);
    MonicPoly::complex(dense.coeffs()[1..].to_vec())
}

/// Signed elementary symmetric polynomials `(-1)^k e_k` for `k = 0..=n`.
fn signed_elementary(roots: &[Scalar]) -> Vec<Scalar> {
    DensePoly::from_linear_factors(roots).coeffs().to_vec()
}

/// `J[k][i] = d a_{k+1} / d u_i = (-1)^{k+1} e_k(roots without u_i)`.
pub fn viete_jacobian_matrix(roots: &[Scalar]) -> CMatrix {
    let d = roots.len();
    let mut jac = CMatrix::zeros(d, d);
    for i in 0..d {
        let others: Vec<Scalar> = roots
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &u)| u)
            .collect();
        // signed[k] = (-1)^k e_k(others)
        let signed = signed_elementary(&others);
        for k in 0..d {
            jac[(k, i)] = -signed[k];
        }
    }
    jac
}

/// `prod_{i<j} (u_i - u_j)`.
pub fn vandermonde_product(roots: &[Scalar]) -> Scalar {
    let mut acc = r(1.0);
    for (i, &a) in roots.iter().enumerate() {
        for &b in &roots[i + 1..] {
            acc *= a - b;
        }
    }
    acc
}

/// Sign in `det J = (-1)^{d(d+1)/2} prod_{i<j} (u_i - u_j)`.
pub fn jacobian_sign(d: usize) -> f64 {
    if (d * (d + 1) / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

#[derive(Clone, Debug)]
pub struct JacobianDet {
    pub lu: Scalar,
    pub product: Scalar,
}

impl JacobianDet {
    pub fn relative_gap(&self) -> f64 {
        (self.lu - self.product).norm() / self.product.norm().max(1.0)
    }
}

/// The Jacobian determinant computed twice: LU of the Jacobi matrix and the
/// signed product of root differences.
pub fn viete_jacobian_det(roots: &[Scalar]) -> JacobianDet {
    JacobianDet {
        lu: linalg::det(&viete_jacobian_matrix(roots)),
        product: vandermonde_product(roots) * jacobian_sign(roots.len()),
    }
}

/// Sylvester matrix of two polynomials given highest degree first.
pub fn sylvester_matrix(p: &DensePoly, q: &DensePoly) -> CMatrix {
    let m = p.degree().unwrap_or(0);
    let n = q.degree().unwrap_or(0);
    let size = m + n;
    let mut s = CMatrix::zeros(size, size);
    for row in 0..n {
        for (j, &a) in p.coeffs().iter().enumerate() {
            s[(row, row + j)] = a;
        }
    }
    for row in 0..m {
        for (j, &b) in q.coeffs().iter().enumerate() {
            s[(n + row, row + j)] = b;
        }
    }
    s
}

pub fn resultant(p: &DensePoly, q: &DensePoly) -> Scalar {
    linalg::det(&sylvester_matrix(p, q))
}

/// `(-1)^{d(d-1)/2} Res(P, P')`, equal to `prod_{i<j} (u_i - u_j)^2`.
pub fn discriminant(p: &MonicPoly) -> Result<Scalar> {
    let d = p.degree();
    if d < 2 {
        return Err(Error::DegreeTooSmall { degree: d, min: 2 });
    }
    let dense = p.to_dense();
    let res = resultant(&dense, &dense.derivative(1));
    let sign = if (d * (d - 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(res * sign)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chamber {
    /// Three distinct real roots.
    U3,
    /// One real root and a conjugate pair.
    U1,
    Boundary,
}

/// Sign of the discriminant of a real cubic; `|Delta| <= chamber_tol` is
/// the boundary.
pub fn real_cubic_chamber(p: &MonicPoly, chamber_tol: f64) -> Result<Chamber> {
    if p.degree() != 3 {
        return Err(Error::InvalidInput(format!(
            "chamber classification needs a cubic, got degree {}",
            p.degree()
        )));
    }
    if p.field() != Field::Real {
        return Err(Error::InvalidInput(
            "chamber classification needs a real polynomial".into(),
        ));
    }
    let delta = discriminant(p)?.re;
    Ok(if delta.abs() <= chamber_tol {
        Chamber::Boundary
    } else if delta > 0.0 {
        Chamber::U3
    } else {
        Chamber::U1
    })
}

/// The image under the Viete map of the slab of root tuples with `u_star`
/// repeated `k` times.
pub fn viete_image_of_slab(u_star: Scalar, d: usize, k: usize) -> Result<AffineFlat> {
    strata::tangent_flat(u_star, d, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::c;

    #[test]
    fn viete_fixtures() {
        let p = viete_map(&[r(1.0), r(2.0)]).unwrap();
        assert_eq!(p.coeffs(), &[r(-3.0), r(2.0)]);
        let u = r(1.5);
        let p = viete_map(&[u, u, u]).unwrap();
        assert_eq!(p.coeffs(), &[-3.0 * u, 3.0 * u * u, -u * u * u]);
        let a = viete_map(&[r(1.0), c(0.0, 2.0), r(-0.5)]).unwrap();
        let b = viete_map(&[r(-0.5), r(1.0), c(0.0, 2.0)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn quadratic_jacobian() {
        let (u, v) = (r(0.3), r(-1.7));
        let j = viete_jacobian_det(&[u, v]);
        assert!((j.lu - (v - u)).norm() < 1e-14);
        assert!((j.product - (v - u)).norm() < 1e-14);
        assert!(viete_jacobian_det(&[u, u, v]).lu.norm() < 1e-14);
    }

    #[test]
    fn cubic_jacobian_matches_printed_product() {
        let (u, v, w) = (r(0.4), r(-1.1), c(0.5, 0.9));
        let j = viete_jacobian_det(&[u, v, w]);
        let printed = (v - u) * (w - v) * (u - w);
        assert!((j.lu - printed).norm() < 1e-12);
        assert!(j.relative_gap() < 1e-12);
    }

    #[test]
    fn discriminant_fixtures() {
        let q = MonicPoly::real(&[0.0, -1.0]).unwrap();
        assert!((discriminant(&q).unwrap() - r(4.0)).norm() < 1e-12);
        let p = MonicPoly::real(&[0.0, -3.0, 2.0]).unwrap();
        assert!(discriminant(&p).unwrap().norm() < 1e-12);
        let (b, cc, d): (f64, f64, f64) = (0.7, -1.3, 0.2);
        let closed = b * b * cc * cc - 4.0 * b.powi(3) * d + 18.0 * b * cc * d
            - 4.0 * cc.powi(3)
            - 27.0 * d * d;
        let p = MonicPoly::real(&[b, cc, d]).unwrap();
        assert!((discriminant(&p).unwrap() - r(closed)).norm() < 1e-12);
    }

    #[test]
    fn chambers() {
        let tol = 1e-9;
        let cubic = |c: [f64; 3]| MonicPoly::real(&c).unwrap();
        assert_eq!(real_cubic_chamber(&cubic([0.0, -1.0, 0.0]), tol), Ok(Chamber::U3));
        assert_eq!(real_cubic_chamber(&cubic([0.0, 1.0, 0.0]), tol), Ok(Chamber::U1));
        assert_eq!(
            real_cubic_chamber(&cubic([0.0, -3.0, 2.0]), tol),
            Ok(Chamber::Boundary)
        );
    }
}
