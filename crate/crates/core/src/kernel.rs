//! Dense real linear algebra used by the rest of the crate.
//!
//! Everything here works on small matrices (dimension at most a few dozen),
//! and every tolerance is relative: a threshold `tol` is compared against
//! `tol * (1 + norm)` of the relevant operand.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

pub type DenseMatrix = DMatrix<f64>;
pub type Vector = DVector<f64>;

/// Base relative tolerance shared by the kernel routines.
pub const BASE_TOL: f64 = 1e-9;

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub eigenvalues: Vector,
    pub eigenvectors: DenseMatrix,
}

impl EigenResult {
    pub fn reconstruct(&self) -> DenseMatrix {
        let v = &self.eigenvectors;
        v * DenseMatrix::from_diagonal(&self.eigenvalues) * v.transpose()
    }
}

pub fn max_abs(m: &DenseMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

fn check_finite(m: &DenseMatrix) -> Result<()> {
    if m.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// Symmetric eigendecomposition.
///
/// The input must be symmetric to within `1e-10 * (1 + max|m_ij|)`; it is
/// symmetrised before factoring so that the returned eigenvectors are
/// orthonormal to working precision.
pub fn sym_eigen(m: &DenseMatrix) -> Result<EigenResult> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    check_finite(m)?;
    let asymmetry = max_abs(&(m - m.transpose()));
    if asymmetry > 1e-10 * (1.0 + max_abs(m)) {
        return Err(Error::NotSymmetric { asymmetry });
    }
    if rows == 0 {
        return Ok(EigenResult {
            eigenvalues: Vector::zeros(0),
            eigenvectors: DenseMatrix::zeros(0, 0),
        });
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..rows).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues = Vector::from_iterator(rows, order.iter().map(|&i| eig.eigenvalues[i]));
    let eigenvectors = DenseMatrix::from_columns(
        &order
            .iter()
            .map(|&i| eig.eigenvectors.column(i).into_owned())
            .collect::<Vec<_>>(),
    );
    Ok(EigenResult {
        eigenvalues,
        eigenvectors,
    })
}

/// Orthonormal basis (as columns) of the numerical kernel of `m`.
///
/// A right singular vector is kept when its singular value is at most
/// `tol * (1 + ‖m‖_F)`.
pub fn nullspace(m: &DenseMatrix, tol: f64) -> DenseMatrix {
    let (rows, cols) = m.shape();
    if cols == 0 {
        return DenseMatrix::zeros(0, 0);
    }
    let threshold = tol * (1.0 + m.norm());
    // SVD only yields a full right basis when rows >= cols.
    let padded = if rows < cols {
        let mut p = DenseMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let kernel: Vec<Vector> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= threshold)
        .map(|(i, _)| v_t.row(i).transpose())
        .collect();
    if kernel.is_empty() {
        DenseMatrix::zeros(cols, 0)
    } else {
        DenseMatrix::from_columns(&kernel)
    }
}

/// Largest singular value.
pub fn spectral_norm(m: &DenseMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

/// Incrementally built orthonormal set with respect to a Gram inner product.
#[derive(Debug, Clone)]
pub struct OrthoBasis {
    gram: DenseMatrix,
    vectors: Vec<Vector>,
}

impl OrthoBasis {
    pub fn new(gram: DenseMatrix) -> Result<Self> {
        if gram.nrows() != gram.ncols() {
            return Err(Error::NotSquare {
                rows: gram.nrows(),
                cols: gram.ncols(),
            });
        }
        let sym = (&gram + gram.transpose()) * 0.5;
        if sym.clone().cholesky().is_none() {
            return Err(Error::DegenerateGram);
        }
        Ok(Self {
            gram: sym,
            vectors: Vec::new(),
        })
    }

    pub fn inner(&self, x: &Vector, y: &Vector) -> f64 {
        x.dot(&(&self.gram * y))
    }

    pub fn norm(&self, x: &Vector) -> f64 {
        self.inner(x, x).max(0.0).sqrt()
    }

    /// Component of `v` orthogonal to the current span (two passes of
    /// modified Gram–Schmidt).
    pub fn residual(&self, v: &Vector) -> Vector {
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &self.vectors {
                let c = self.inner(q, &r);
                r.axpy(-c, q, 1.0);
            }
        }
        r
    }

    /// Adds the normalised residual of `v` unless it is at most
    /// `tol * (1 + ‖v‖)`. Returns whether the span grew.
    pub fn push(&mut self, v: &Vector, tol: f64) -> bool {
        let input_norm = self.norm(v);
        let r = self.residual(v);
        let rn = self.norm(&r);
        if !rn.is_finite() || rn <= tol * (1.0 + input_norm) {
            return false;
        }
        self.vectors.push(r / rn);
        true
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<Vector> {
        self.vectors
    }
}

/// Orthonormalises `vectors` in the inner product defined by `gram`,
/// dropping any vector whose residual is at most `tol * (1 + its norm)`.
pub fn gram_schmidt(vectors: &[Vector], gram: &DenseMatrix, tol: f64) -> Result<Vec<Vector>> {
    let mut basis = OrthoBasis::new(gram.clone())?;
    for v in vectors {
        if v.len() != gram.nrows() {
            return Err(Error::DimensionMismatch {
                expected: gram.nrows(),
                found: v.len(),
            });
        }
        basis.push(v, tol);
    }
    Ok(basis.into_vectors())
}

/// Symmetric square root and inverse square root of a positive definite matrix.
pub(crate) fn sqrt_and_inv_sqrt(gram: &DenseMatrix) -> Result<(DenseMatrix, DenseMatrix)> {
    let eig = sym_eigen(gram)?;
    let scale = 1.0 + max_abs(gram);
    if eig.eigenvalues.iter().any(|&l| l <= 1e-12 * scale) {
        return Err(Error::DegenerateGram);
    }
    let v = &eig.eigenvectors;
    let sqrt = v * DenseMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt)) * v.transpose();
    let inv_sqrt =
        v * DenseMatrix::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / l.sqrt())) * v.transpose();
    Ok((sqrt, inv_sqrt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn identity_eigenvalues() {
        let r = sym_eigen(&DenseMatrix::identity(3, 3)).unwrap();
        for l in r.eigenvalues.iter() {
            assert_close(*l, 1.0, 1e-14);
        }
        let vtv = r.eigenvectors.transpose() * &r.eigenvectors;
        assert!((vtv - DenseMatrix::identity(3, 3)).norm() < 1e-12);
    }

    #[test]
    fn diagonal_eigenvalues_sorted() {
        let m = DenseMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, -1.0]);
        let r = sym_eigen(&m).unwrap();
        assert_close(r.eigenvalues[0], -1.0, 1e-14);
        assert_close(r.eigenvalues[1], 2.0, 1e-14);
    }

    #[test]
    fn swap_matrix_eigenvalues() {
        // λ² − 1 = 0
        let m = DenseMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let r = sym_eigen(&m).unwrap();
        assert_close(r.eigenvalues[0], -1.0, 1e-14);
        assert_close(r.eigenvalues[1], 1.0, 1e-14);
    }

    #[test]
    fn eigen_errors() {
        let rect = DenseMatrix::zeros(2, 3);
        assert!(matches!(sym_eigen(&rect), Err(Error::NotSquare { .. })));
        let asym = DenseMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(sym_eigen(&asym), Err(Error::NotSymmetric { .. })));
        let nan = DenseMatrix::from_row_slice(1, 1, &[f64::NAN]);
        assert_eq!(sym_eigen(&nan).unwrap_err(), Error::NonFinite);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace(&DenseMatrix::zeros(2, 2), 1e-9).ncols(), 2);
        assert_eq!(nullspace(&DenseMatrix::identity(3, 3), 1e-9).ncols(), 0);

        let ones = DenseMatrix::from_element(2, 2, 1.0);
        let k = nullspace(&ones, 1e-9);
        assert_eq!(k.ncols(), 1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // sign of a kernel vector is arbitrary
        let sign = k[(0, 0)].signum();
        assert_close(sign * k[(0, 0)], s, 1e-12);
        assert_close(sign * k[(1, 0)], -s, 1e-12);
    }

    #[test]
    fn nullspace_wide_matrix() {
        let m = DenseMatrix::from_row_slice(1, 3, &[1.0, 2.0, 3.0]);
        let k = nullspace(&m, 1e-9);
        assert_eq!(k.ncols(), 2);
        assert!((&m * &k).norm() < 1e-12);
    }

    #[test]
    fn gram_schmidt_examples() {
        let id = DenseMatrix::identity(2, 2);
        let dep = gram_schmidt(
            &[Vector::from_vec(vec![1.0, 0.0]), Vector::from_vec(vec![2.0, 0.0])],
            &id,
            1e-9,
        )
        .unwrap();
        assert_eq!(dep.len(), 1);
        assert_close(dep[0][0], 1.0, 1e-15);

        let out = gram_schmidt(
            &[Vector::from_vec(vec![1.0, 0.0]), Vector::from_vec(vec![1.0, 1.0])],
            &id,
            1e-9,
        )
        .unwrap();
        assert_eq!(out.len(), 2);
        assert_close(out[1][0], 0.0, 1e-15);
        assert_close(out[1][1], 1.0, 1e-15);

        assert!(gram_schmidt(&[], &id, 1e-9).unwrap().is_empty());
    }

    #[test]
    fn gram_schmidt_rejects_indefinite_gram() {
        let g = DenseMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert_eq!(
            gram_schmidt(&[], &g, 1e-9).unwrap_err(),
            Error::DegenerateGram
        );
    }

    fn sym_matrix(n: usize) -> impl Strategy<Value = DenseMatrix> {
        proptest::collection::vec(-10.0..10.0_f64, n * n).prop_map(move |v| {
            let m = DenseMatrix::from_vec(n, n, v);
            (&m + m.transpose()) * 0.5
        })
    }

    fn any_matrix() -> impl Strategy<Value = DenseMatrix> {
        (1usize..6, 1usize..6, 0usize..4).prop_flat_map(|(r, c, rank)| {
            let rank = rank.min(r).min(c);
            (
                proptest::collection::vec(-3.0..3.0_f64, r * rank),
                proptest::collection::vec(-3.0..3.0_f64, rank * c),
            )
                .prop_map(move |(a, b)| {
                    DenseMatrix::from_vec(r, rank, a) * DenseMatrix::from_vec(rank, c, b)
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn eigen_reconstructs(m in (1usize..=27).prop_flat_map(sym_matrix)) {
            let r = sym_eigen(&m).unwrap();
            let eps = 1e-9 * (1.0 + m.norm());
            prop_assert!((r.reconstruct() - &m).norm() <= eps);
            let n = m.nrows();
            let vtv = r.eigenvectors.transpose() * &r.eigenvectors;
            prop_assert!((vtv - DenseMatrix::identity(n, n)).norm() <= 1e-9);
            prop_assert!(r.eigenvalues.as_slice().windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn rank_nullity(m in any_matrix()) {
            let k = nullspace(&m, 1e-9);
            let rank = m.rank(1e-9 * (1.0 + m.norm()));
            prop_assert_eq!(rank + k.ncols(), m.ncols());
            prop_assert!((&m * &k).norm() <= 1e-9 * (1.0 + m.norm()) * (1.0 + k.ncols() as f64));
        }

        #[test]
        fn gram_schmidt_orthonormal(
            vs in proptest::collection::vec(proptest::collection::vec(-5.0..5.0_f64, 4), 0..6),
            g in proptest::collection::vec(-1.0..1.0_f64, 16),
        ) {
            let a = DenseMatrix::from_vec(4, 4, g);
            let gram = &a * a.transpose() + DenseMatrix::identity(4, 4);
            let input: Vec<Vector> = vs.into_iter().map(Vector::from_vec).collect();
            let out = gram_schmidt(&input, &gram, 1e-9).unwrap();
            for (i, x) in out.iter().enumerate() {
                for (j, y) in out.iter().enumerate() {
                    let ip = x.dot(&(&gram * y));
                    let expect = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((ip - expect).abs() <= 1e-9);
                }
            }
            // span preserved: every input lies in the output span
            if !input.is_empty() {
                let mut basis = OrthoBasis::new(gram.clone()).unwrap();
                for v in &out { basis.push(v, 1e-9); }
                for v in &input {
                    let r = basis.residual(v);
                    prop_assert!(basis.norm(&r) <= 1e-8 * (1.0 + basis.norm(v)));
                }
            }
        }
    }
}
