// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

/// Numerical tolerances shared by validation routines.
///
/// All matrix deviations are measured in the entrywise max-modulus norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// ‖M − M†‖ bound for Hermitian operators.
    pub hermiticity: f64,
    /// Smallest eigenvalue accepted for positive semidefinite operators is `-psd_floor`.
    pub psd_floor: f64,
    /// |Tr ρ − 1| bound.
    pub trace: f64,
    /// |‖ψ‖ − 1| bound for state vectors.
    pub norm: f64,
    /// ‖P² − P‖ bound for projectors.
    pub idempotency: f64,
    /// ‖Σ K†K − I‖ bound for instruments.
    pub completeness: f64,
    /// ‖U†U − I‖ bound for unitaries.
    pub unitarity: f64,
    /// Relative gap under which eigenvalues are treated as degenerate.
    pub degeneracy: f64,
    /// 1 − |⟨φ|ψ⟩| bound for phase-insensitive state equality.
    pub phase: f64,
    /// Largest admissible tensor-product dimension.
    pub dimension_cap: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: 1e-10,
            psd_floor: 1e-10,
            trace: 1e-10,
            norm: 1e-12,
            idempotency: 1e-9,
            completeness: 1e-10,
            unitarity: 1e-10,
            degeneracy: 1e-9,
            phase: 1e-10,
            dimension_cap: 4096,
        }
    }
}

impl Tolerances {
    /// Tolerances usable with single-precision arithmetic.
    pub fn single_precision() -> Self {
        Self {
            hermiticity: 1e-5,
            psd_floor: 1e-5,
            trace: 1e-5,
            norm: 1e-6,
            idempotency: 1e-5,
            completeness: 1e-5,
            unitarity: 1e-5,
            degeneracy: 1e-4,
            phase: 1e-5,
            dimension_cap: 4096,
        }
    }
}
