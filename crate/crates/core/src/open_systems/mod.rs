// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! Markovian open-system dynamics in GKSL form and entropy analytics.
//!
//! `dρ/dt = −i[H,ρ] + Σₖ (LₖρLₖ† − ½{Lₖ†Lₖ, ρ})` with ħ = 1. Entropies are
//! in nats.

mod analysis;
mod entropy;
mod evolve;

pub use analysis::{
    decision_distribution, decision_distribution_with, hump_profile, hump_profile_with,
    order_stability_report, stationary_state, DecisionOutcome, HumpReport, OrderStabilityReport,
    Peak, StationaryState, DECOHERENCE_THRESHOLD, HUMP_NOISE_FLOOR, HUMP_WINDOW,
};
pub use entropy::{entropy_of_spectrum, linear_entropy, von_neumann_entropy};
pub use evolve::{evolve, evolve_with, EntropyRecord, EvolveOptions, Trajectory};

use crate::hilbert::{
    check_dim, check_square, hermiticity_deviation, ComplexMatrix, DensityOperator,
};
use crate::{Error, Real, Result};

/// Hamiltonian plus jump operators.
#[derive(Debug, Clone, PartialEq)]
pub struct GkslGenerator<T: Real> {
    hamiltonian: ComplexMatrix<T>,
    jumps: Vec<ComplexMatrix<T>>,
    /// `Σ Lₖ†Lₖ`, cached.
    decay: ComplexMatrix<T>,
}

const HAMILTONIAN_HERMITICITY: f64 = 1e-10;

impl<T: Real> GkslGenerator<T> {
    pub fn new(hamiltonian: ComplexMatrix<T>, jumps: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let dim = check_square(&hamiltonian)?;
        let dev = hermiticity_deviation(&hamiltonian);
        if dev > T::lit(HAMILTONIAN_HERMITICITY) {
            return Err(Error::NotHermitian { deviation: dev.as_f64() });
        }
        let mut decay = ComplexMatrix::zeros(dim, dim);
        for l in &jumps {
            check_dim(dim, check_square(l)?)?;
            decay += l.adjoint() * l;
        }
        Ok(Self { hamiltonian, jumps, decay })
    }

    /// Closed dynamics under `H`.
    pub fn unitary(hamiltonian: ComplexMatrix<T>) -> Result<Self> {
        Self::new(hamiltonian, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.nrows()
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix<T> {
        &self.hamiltonian
    }

    pub fn jumps(&self) -> &[ComplexMatrix<T>] {
        &self.jumps
    }

    /// Right-hand side on an arbitrary matrix (RK stages are not densities).
    pub(crate) fn apply(&self, rho: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let i = nalgebra::Complex::new(T::zero(), T::one());
        let half = T::lit(0.5).cplx();
        let mut out = (&self.hamiltonian * rho - rho * &self.hamiltonian) * (-i);
        for l in &self.jumps {
            out += l * rho * l.adjoint();
        }
        out -= (&self.decay * rho + rho * &self.decay) * half;
        out
    }

    /// The generator as a `d²×d²` matrix acting on column-stacked `vec(ρ)`.
    pub fn to_matrix(&self) -> ComplexMatrix<T> {
        let d = self.dim();
        let id = crate::hilbert::identity::<T>(d);
        let i = nalgebra::Complex::new(T::zero(), T::one());
        let half = T::lit(0.5).cplx();
        // vec(AXB) = (Bᵀ ⊗ A) vec(X)
        let mut m = (id.kronecker(&self.hamiltonian) - self.hamiltonian.transpose().kronecker(&id)) * (-i);
        for l in &self.jumps {
            m += l.conjugate().kronecker(l);
        }
        m -= (id.kronecker(&self.decay) + self.decay.transpose().kronecker(&id)) * half;
        m
    }
}

/// `−i[H,ρ] + Σₖ (LₖρLₖ† − ½{Lₖ†Lₖ, ρ})`.
pub fn gksl_rhs<T: Real>(g: &GkslGenerator<T>, rho: &DensityOperator<T>) -> Result<ComplexMatrix<T>> {
    check_dim(g.dim(), rho.dim())?;
    Ok(g.apply(rho.matrix()))
}
