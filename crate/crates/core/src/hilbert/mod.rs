// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! Complex linear-algebra substrate.
//!
//! Matrices are dense `nalgebra` matrices of complex entries. Norms written
//! ‖·‖ throughout the crate are entrywise max-modulus norms unless noted.
//!
//! Tensor products follow the Kronecker row-major block convention:
//! `(A ⊗ B)[i·dB + k, j·dB + l] = A[i, j]·B[k, l]`, so the first factor
//! indexes blocks and the second factor indexes entries inside a block.

mod density;
mod eig;
mod observable;
mod projector;
mod spectrum;
mod state;

pub use density::{validate_density, validate_density_with, DensityOperator};
pub use eig::{eig_hermitian, EigenDecomposition, EigenGroup};
pub use observable::{HermitianObservable, SpectralComponent};
pub use projector::Projector;
pub use spectrum::{spectrum_additivity_report, AdditivityReport};
pub use state::{density_from_pure, make_pure_state, StateVector};

use nalgebra::{Complex, ComplexField, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::{Error, Real, Result, Tolerances};

pub type ComplexMatrix<T> = DMatrix<Complex<T>>;
pub type ComplexVector<T> = DVector<Complex<T>>;

/// Which factor of a bipartite space to keep in a partial trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subsystem {
    A,
    B,
}

pub fn identity<T: Real>(dim: usize) -> ComplexMatrix<T> {
    ComplexMatrix::identity(dim, dim)
}

pub fn zeros<T: Real>(dim: usize) -> ComplexMatrix<T> {
    ComplexMatrix::zeros(dim, dim)
}

/// Diagonal matrix from real entries.
pub fn diag<T: Real>(entries: &[T]) -> ComplexMatrix<T> {
    let v = ComplexVector::from_iterator(entries.len(), entries.iter().map(|x| x.cplx()));
    ComplexMatrix::from_diagonal(&v)
}

/// Builds a square matrix from row-major real entries.
pub fn real_matrix<T: Real>(dim: usize, rows: &[f64]) -> ComplexMatrix<T> {
    assert_eq!(rows.len(), dim * dim, "row-major literal has wrong length");
    ComplexMatrix::from_row_iterator(dim, dim, rows.iter().map(|&x| T::lit(x).cplx()))
}

/// Largest entry modulus.
pub fn max_abs<T: Real>(m: &ComplexMatrix<T>) -> T {
    m.iter().fold(T::zero(), |acc, z| acc.max(z.modulus()))
}

pub fn vec_max_abs<T: Real>(v: &ComplexVector<T>) -> T {
    v.iter().fold(T::zero(), |acc, z| acc.max(z.modulus()))
}

pub fn hermiticity_deviation<T: Real>(m: &ComplexMatrix<T>) -> T {
    max_abs(&(m - m.adjoint()))
}

/// `(M + M†) / 2`.
pub fn hermitize<T: Real>(m: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    (m + m.adjoint()) * T::lit(0.5).cplx()
}

pub fn commutator<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    a * b - b * a
}

pub fn anticommutator<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    a * b + b * a
}

/// `Re Tr[A B]` without forming the product.
pub fn trace_product_re<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> T {
    let mut acc = T::zero();
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            acc += (a[(i, k)] * b[(k, i)]).re;
        }
    }
    acc
}

pub fn is_finite<T: Real>(m: &ComplexMatrix<T>) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Checks the matrix is nonempty, square and finite; returns its dimension.
pub fn check_square<T: Real>(m: &ComplexMatrix<T>) -> Result<usize> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(Error::Empty);
    }
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    if !is_finite(m) {
        return Err(Error::NonFinite);
    }
    Ok(m.nrows())
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Kronecker product with the default dimension cap.
pub fn tensor<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    tensor_with_cap(a, b, Tolerances::default().dimension_cap)
}

pub fn tensor_with_cap<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    cap: usize,
) -> Result<ComplexMatrix<T>> {
    let da = check_square(a)?;
    let db = check_square(b)?;
    let dim = da.checked_mul(db).ok_or(Error::DimensionCap { dim: usize::MAX, cap })?;
    if dim > cap {
        return Err(Error::DimensionCap { dim, cap });
    }
    Ok(a.kronecker(b))
}

/// Partial trace over one factor of a `dA·dB` dimensional operator.
pub fn partial_trace<T: Real>(
    m: &ComplexMatrix<T>,
    dims: (usize, usize),
    keep: Subsystem,
) -> Result<ComplexMatrix<T>> {
    let dim = check_square(m)?;
    let (da, db) = dims;
    if da == 0 || db == 0 {
        return Err(Error::Empty);
    }
    check_dim(da * db, dim)?;
    let out = match keep {
        Subsystem::A => ComplexMatrix::from_fn(da, da, |i, j| {
            (0..db).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                acc + m[(i * db + k, j * db + k)]
            })
        }),
        Subsystem::B => ComplexMatrix::from_fn(db, db, |k, l| {
            (0..da).fold(Complex::new(T::zero(), T::zero()), |acc, i| {
                acc + m[(i * db + k, i * db + l)]
            })
        }),
    };
    Ok(out)
}

/// Projector `Σ v v†` onto the span of orthonormal columns.
pub(crate) fn projector_from_columns<T: Real>(
    dim: usize,
    columns: impl IntoIterator<Item = ComplexVector<T>>,
) -> ComplexMatrix<T> {
    let mut p = zeros::<T>(dim);
    for v in columns {
        p += &v * v.adjoint();
    }
    hermitize(&p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_tensor_identity() {
        let i4 = tensor(&identity::<f64>(2), &identity(2)).unwrap();
        assert_eq!(i4, identity(4));
    }

    #[test]
    fn diagonal_kronecker_layout() {
        let k = tensor(&diag::<f64>(&[1.0, 2.0]), &diag(&[3.0, 4.0])).unwrap();
        assert_eq!(k, diag(&[3.0, 4.0, 6.0, 8.0]));
    }

    #[test]
    fn off_diagonal_block_layout() {
        // first factor indexes blocks
        let a = real_matrix::<f64>(2, &[0.0, 1.0, 0.0, 0.0]);
        let b = real_matrix::<f64>(2, &[1.0, 2.0, 3.0, 4.0]);
        let k = tensor(&a, &b).unwrap();
        assert_eq!(k[(0, 2)].re, 1.0);
        assert_eq!(k[(0, 3)].re, 2.0);
        assert_eq!(k[(1, 2)].re, 3.0);
        assert_eq!(k[(1, 3)].re, 4.0);
        assert_eq!(k[(2, 0)].re, 0.0);
    }

    #[test]
    fn tensor_cap_enforced() {
        let a = identity::<f64>(8);
        let err = tensor_with_cap(&a, &a, 32).unwrap_err();
        assert_eq!(err, Error::DimensionCap { dim: 64, cap: 32 });
    }

    #[test]
    fn partial_trace_of_maximally_mixed() {
        let m = identity::<f64>(4) * Complex::new(0.25, 0.0);
        let r = partial_trace(&m, (2, 2), Subsystem::B).unwrap();
        assert!(max_abs(&(r - identity::<f64>(2) * Complex::new(0.5, 0.0))) < 1e-15);
    }

    #[test]
    fn partial_trace_of_bell_state() {
        let s = 0.5f64.sqrt();
        let psi = ComplexVector::from_vec(vec![
            Complex::new(s, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
            Complex::new(s, 0.0),
        ]);
        let rho = &psi * psi.adjoint();
        let r = partial_trace(&rho, (2, 2), Subsystem::A).unwrap();
        assert!(max_abs(&(r - diag(&[0.5, 0.5]))) < 1e-15);
    }

    #[test]
    fn partial_trace_dimension_mismatch() {
        let m = identity::<f64>(5);
        assert!(matches!(
            partial_trace(&m, (2, 2), Subsystem::A),
            Err(Error::DimensionMismatch { expected: 4, found: 5 })
        ));
    }

    #[test]
    fn check_square_rejects_rectangular_and_nan() {
        let r = ComplexMatrix::<f64>::zeros(3, 2);
        assert_eq!(check_square(&r), Err(Error::NotSquare { rows: 3, cols: 2 }));
        let mut n = identity::<f64>(2);
        n[(0, 1)] = Complex::new(f64::NAN, 0.0);
        assert_eq!(check_square(&n), Err(Error::NonFinite));
    }
}
