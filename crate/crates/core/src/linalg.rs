//! Small dense complex linear algebra on top of `nalgebra`.
//!
//! Every matrix in this crate is tiny (tensor products of a handful of spin
//! representations), so everything is dense and eigen-decompositions are
//! taken with the Hermitian solver.

use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::C64;

pub type CMatrix = DMatrix<C64>;

pub fn zeros(rows: usize, cols: usize) -> CMatrix {
    CMatrix::zeros(rows, cols)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

/// Frobenius norm.
pub fn norm(a: &CMatrix) -> f64 {
    a.norm()
}

/// Frobenius norm of `a - a†`.
pub fn hermitian_defect(a: &CMatrix) -> f64 {
    (a - a.adjoint()).norm()
}

/// Frobenius norm of `a†a - 1`.
pub fn unitarity_defect(a: &CMatrix) -> f64 {
    (a.adjoint() * a - identity(a.ncols())).norm()
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: CMatrix,
}

pub fn hermitian_eigen(a: &CMatrix) -> HermitianEigen {
    let n = a.nrows();
    if n == 0 {
        return HermitianEigen { values: Vec::new(), vectors: zeros(0, 0) };
    }
    // Symmetrize first; the solver only reads one triangle.
    let sym = (a + a.adjoint()) * C64::new(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    HermitianEigen { values, vectors }
}

/// Applies `f` to the spectrum of a Hermitian matrix.
pub fn spectral_map(a: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let eig = hermitian_eigen(a);
    let n = a.nrows();
    let mut scaled = eig.vectors.clone();
    for (c, &v) in eig.values.iter().enumerate() {
        let s = C64::new(f(v), 0.0);
        for r in 0..n {
            scaled[(r, c)] *= s;
        }
    }
    scaled * eig.vectors.adjoint()
}

/// Modified Gram-Schmidt on the columns of `m`, dropping columns whose
/// residual norm falls below `tol`.
pub fn orthonormalize_columns(m: &CMatrix, tol: f64) -> CMatrix {
    let rows = m.nrows();
    let mut kept: Vec<nalgebra::DVector<C64>> = Vec::new();
    for c in 0..m.ncols() {
        let mut v = m.column(c).into_owned();
        for _ in 0..2 {
            for q in &kept {
                let proj = q.dotc(&v);
                v -= q * proj;
            }
        }
        let n = v.norm();
        if n > tol {
            kept.push(v / C64::new(n, 0.0));
        }
    }
    CMatrix::from_fn(rows, kept.len(), |r, c| kept[c][r])
}

/// Orthonormal basis of the kernel of a Hermitian matrix.
pub fn hermitian_kernel(a: &CMatrix, tol: f64) -> CMatrix {
    let eig = hermitian_eigen(a);
    let cols: Vec<usize> = (0..eig.values.len()).filter(|&i| eig.values[i].abs() < tol).collect();
    CMatrix::from_fn(a.nrows(), cols.len(), |r, c| eig.vectors[(r, cols[c])])
}

/// `1 ⊗ … ⊗ op ⊗ … ⊗ 1` with `op` in tensor factor `slot`.
pub fn embed(op: &CMatrix, slot: usize, dims: &[usize]) -> CMatrix {
    embed_product(&[(slot, op)], dims)
}

/// Tensor product of operators on distinct factors, identity elsewhere.
/// Factor 0 is the most significant index.
pub fn embed_product(ops: &[(usize, &CMatrix)], dims: &[usize]) -> CMatrix {
    let mut out = identity(1);
    for (k, &d) in dims.iter().enumerate() {
        let factor = match ops.iter().find(|(s, _)| *s == k) {
            Some((_, op)) => (*op).clone(),
            None => identity(d),
        };
        out = kron(&out, &factor);
    }
    out
}

/// Row-major multi-index flattening: factor 0 is the most significant.
pub fn flatten_index(indices: &[usize], dims: &[usize]) -> usize {
    indices.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

pub fn unflatten_index(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = alloc::vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = flat % dims[k];
        flat /= dims[k];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eigen_of_pauli_y() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
        let e = hermitian_eigen(&m);
        assert!((e.values[0] + 1.0).abs() < 1e-14);
        assert!((e.values[1] - 1.0).abs() < 1e-14);
        let back = &e.vectors
            * CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(2, e.values.iter().map(|&v| c(v, 0.))))
            * e.vectors.adjoint();
        assert!((back - m).norm() < 1e-14);
    }

    #[test]
    fn spectral_square_root_squares_back() {
        let m = CMatrix::from_row_slice(2, 2, &[c(2., 0.), c(0., 1.), c(0., -1.), c(3., 0.)]);
        let r = spectral_map(&m, libm::sqrt);
        assert!((&r * &r - m).norm() < 1e-13);
    }

    #[test]
    fn gram_schmidt_drops_dependent_columns() {
        let m = CMatrix::from_row_slice(2, 3, &[c(1., 0.), c(2., 0.), c(0., 1.), c(0., 0.), c(0., 0.), c(1., 0.)]);
        let q = orthonormalize_columns(&m, 1e-12);
        assert_eq!(q.ncols(), 2);
        assert!(unitarity_defect(&q) < 1e-14);
    }

    #[test]
    fn index_flattening_round_trips() {
        let dims = [2, 3, 4];
        for flat in 0..24 {
            assert_eq!(flatten_index(&unflatten_index(flat, &dims), &dims), flat);
        }
    }

    #[test]
    fn embedding_matches_kron_order() {
        let a = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(2., 0.), c(3., 0.), c(4., 0.)]);
        let e = embed(&a, 0, &[2, 3]);
        assert_eq!(e, kron(&a, &identity(3)));
        let e = embed(&a, 1, &[3, 2]);
        assert_eq!(e, kron(&identity(3), &a));
    }
}
