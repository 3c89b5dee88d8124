// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use super::{
    check_square, hermiticity_deviation, hermitize, identity, max_abs, ComplexMatrix, ComplexVector,
};
use crate::{Error, Real, Result, Tolerances};

/// Orthogonal projector (Hermitian and idempotent). Represents a subspace,
/// i.e. a proposition of quantum logic.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector<T: Real> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> Projector<T> {
    pub fn new(m: ComplexMatrix<T>) -> Result<Self> {
        Self::new_with(m, &Tolerances::default())
    }

    pub fn new_with(m: ComplexMatrix<T>, tol: &Tolerances) -> Result<Self> {
        check_square(&m)?;
        let dev = hermiticity_deviation(&m);
        if dev > T::lit(tol.hermiticity) {
            return Err(Error::NotHermitian { deviation: dev.as_f64() });
        }
        let m = hermitize(&m);
        let idem = max_abs(&(&m * &m - &m));
        if idem > T::lit(tol.idempotency) {
            return Err(Error::NotProjector { deviation: idem.as_f64() });
        }
        Ok(Self { matrix: m })
    }

    pub(crate) fn from_matrix_unchecked(m: ComplexMatrix<T>) -> Self {
        Self { matrix: hermitize(&m) }
    }

    pub fn zero(dim: usize) -> Self {
        Self { matrix: ComplexMatrix::zeros(dim, dim) }
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: identity(dim) }
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) nonzero vector.
    pub fn onto(v: &ComplexVector<T>) -> Result<Self> {
        let n = v.norm();
        if n <= T::zero() || !n.is_finite() {
            return Err(Error::DegenerateState);
        }
        let u = v.unscale(n);
        Ok(Self { matrix: hermitize(&(&u * u.adjoint())) })
    }

    /// Projector onto the span of arbitrary vectors (orthonormalized internally).
    pub fn span(dim: usize, vectors: &[ComplexVector<T>]) -> Result<Self> {
        let mut p = Self::zero(dim);
        for v in vectors {
            super::check_dim(dim, v.len())?;
            let p_v = Self::onto(v)?;
            p = crate::logic::join(&p, &p_v)?;
        }
        Ok(p)
    }

    /// Projector onto the computational basis vectors at `indices`.
    pub fn coordinate(dim: usize, indices: &[usize]) -> Self {
        let mut m = ComplexMatrix::zeros(dim, dim);
        for &i in indices {
            m[(i, i)] = T::one().cplx();
        }
        Self { matrix: m }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn rank(&self) -> usize {
        self.matrix.trace().re.as_f64().round() as usize
    }

    /// `I − P`.
    pub fn complement(&self) -> Self {
        Self { matrix: identity::<T>(self.dim()) - &self.matrix }
    }

    pub fn apply(&self, v: &ComplexVector<T>) -> ComplexVector<T> {
        &self.matrix * v
    }
}
