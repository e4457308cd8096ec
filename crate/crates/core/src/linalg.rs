//! Thin wrappers over nalgebra for the dense complex linear algebra the
//! strata routines need: determinants, solves, numerical rank, null spaces.

use nalgebra::{DMatrix, DVector};

use crate::poly::Scalar;

pub type CMatrix = DMatrix<Scalar>;
pub type CVector = DVector<Scalar>;

/// Default relative rank tolerance.
pub const RANK_TOL: f64 = 1e-10;

pub fn from_rows(rows: &[Vec<Scalar>], cols: usize) -> CMatrix {
    CMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j])
}

/// Determinant by LU with partial pivoting.
pub fn det(m: &CMatrix) -> Scalar {
    assert!(m.is_square(), "determinant of a non-square matrix");
    if m.nrows() == 0 {
        return Scalar::new(1.0, 0.0);
    }
    m.clone().lu().determinant()
}

/// Solves a square system; `None` when singular.
pub fn solve(a: &CMatrix, b: &CVector) -> Option<CVector> {
    a.clone().lu().solve(b)
}

/// Singular values, descending. The matrix is zero-padded to a square so
/// that wide and tall inputs are treated alike.
fn padded_svd(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows().max(m.ncols());
    let mut sq = CMatrix::zeros(n, m.ncols());
    sq.rows_mut(0, m.nrows()).copy_from(m);
    let svd = sq.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let values = order.iter().map(|&i| svd.singular_values[i]).collect();
    let rows = CMatrix::from_fn(order.len(), v_t.ncols(), |i, j| v_t[(order[i], j)]);
    (values, rows)
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    padded_svd(m).0
}

/// Numerical rank: singular values above `rel_tol * sigma_max`.
pub fn rank(m: &CMatrix, rel_tol: f64) -> usize {
    let sv = singular_values(m);
    let Some(&top) = sv.first() else {
        return 0;
    };
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Orthonormal basis (as columns) of the null space of `m`.
pub fn null_space(m: &CMatrix, rel_tol: f64) -> CMatrix {
    let cols = m.ncols();
    if m.nrows() == 0 {
        return CMatrix::identity(cols, cols);
    }
    let (sv, v_t) = padded_svd(m);
    let top = sv.first().copied().unwrap_or(0.0);
    let r = sv.iter().filter(|&&s| top > 0.0 && s > rel_tol * top).count();
    let basis_rows = v_t.rows(r, cols - r);
    basis_rows.adjoint()
}

/// Minimum-norm least-squares solution of `m x = b`. Wide systems are
/// zero-padded to square first, as in `padded_svd`; nalgebra's complex SVD
/// solve is unreliable on wide inputs.
pub fn min_norm_solve(m: &CMatrix, b: &CVector, rel_tol: f64) -> CVector {
    if m.nrows() == 0 {
        return CVector::zeros(m.ncols());
    }
    let n = m.nrows().max(m.ncols());
    let mut sq = CMatrix::zeros(n, m.ncols());
    sq.rows_mut(0, m.nrows()).copy_from(m);
    let mut rhs = CVector::zeros(n);
    rhs.rows_mut(0, m.nrows()).copy_from(b);
    let svd = sq.svd(true, true);
    let top = svd.singular_values.max();
    svd.solve(&rhs, rel_tol * top)
        .expect("U and V^T were requested")
}

/// Orthogonal projector onto the column span of an orthonormal basis.
pub fn projector(basis: &CMatrix) -> CMatrix {
    basis * basis.adjoint()
}

/// Spectral norm.
pub fn norm2(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}
