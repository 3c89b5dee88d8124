// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{Complex, ComplexField};

use super::{ComplexVector, DensityOperator};
use crate::{Error, Real, Result, Tolerances};

/// Unit-norm pure state. The global phase is kept as given; use
/// [`StateVector::same_state`] for phase-insensitive comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    amplitudes: ComplexVector<T>,
}

/// Normalizes `amplitudes` into a pure state.
pub fn make_pure_state<T: Real>(amplitudes: &[Complex<T>]) -> Result<StateVector<T>> {
    StateVector::new(ComplexVector::from_column_slice(amplitudes))
}

/// Rank-one projector `ψψ†`.
pub fn density_from_pure<T: Real>(psi: &StateVector<T>) -> DensityOperator<T> {
    psi.density()
}

impl<T: Real> StateVector<T> {
    pub fn new(amplitudes: ComplexVector<T>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Empty);
        }
        if !amplitudes.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = amplitudes.norm();
        if norm <= T::zero() || !norm.is_finite() {
            return Err(Error::DegenerateState);
        }
        Ok(Self { amplitudes: amplitudes.unscale(norm) })
    }

    /// Wraps an already normalized vector, checking the norm.
    pub fn from_normalized(amplitudes: ComplexVector<T>, tol: &Tolerances) -> Result<Self> {
        let norm = amplitudes.norm();
        if (norm - T::one()).abs() > T::lit(tol.norm) {
            return Err(Error::InvalidArgument(format!(
                "state vector norm {} differs from 1",
                norm.as_f64()
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Computational basis vector |index⟩.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index out of range");
        let mut v = ComplexVector::zeros(dim);
        v[index] = T::one().cplx();
        Self { amplitudes: v }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &ComplexVector<T> {
        &self.amplitudes
    }

    pub fn into_inner(self) -> ComplexVector<T> {
        self.amplitudes
    }

    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// True iff the states agree up to a global phase: `1 − |⟨φ|ψ⟩| ≤ tol`.
    pub fn same_state(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim() && T::one() - self.inner(other).modulus() <= T::lit(tol)
    }

    pub fn density(&self) -> DensityOperator<T> {
        DensityOperator::from_hermitian_unchecked(&self.amplitudes * self.amplitudes.adjoint())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self { amplitudes: self.amplitudes.kronecker(&other.amplitudes) }
    }
}
