// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use crate::hilbert::DensityOperator;
use crate::Real;

/// `−Σ λ ln λ` over the positive part of a spectrum, floored at zero
/// (rounding can push an eigenvalue of a pure state just above 1).
pub fn entropy_of_spectrum<T: Real>(values: &[T]) -> T {
    values
        .iter()
        .filter(|&&l| l > T::zero())
        .fold(T::zero(), |acc, &l| acc - l * l.ln())
        .max(T::zero())
}

pub fn von_neumann_entropy<T: Real>(rho: &DensityOperator<T>) -> T {
    entropy_of_spectrum(&rho.eigenvalues())
}

/// `1 − Tr ρ²`.
pub fn linear_entropy<T: Real>(rho: &DensityOperator<T>) -> T {
    (T::one() - rho.purity()).max(T::zero())
}
