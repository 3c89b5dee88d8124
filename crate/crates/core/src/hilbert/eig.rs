// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::SymmetricEigen;

use super::{check_square, hermiticity_deviation, hermitize, max_abs, ComplexMatrix, ComplexVector};
use crate::{Error, Real, Result};

/// Input hermiticity accepted by the eigensolver.
const EIG_HERMITICITY: f64 = 1e-8;

/// Spectral decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct EigenDecomposition<T: Real> {
    pub values: Vec<T>,
    /// Orthonormal eigenvectors, one per column, aligned with `values`.
    pub vectors: ComplexMatrix<T>,
}

/// A cluster of numerically degenerate eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenGroup<T> {
    pub value: T,
    pub indices: Vec<usize>,
}

pub fn eig_hermitian<T: Real>(m: &ComplexMatrix<T>) -> Result<EigenDecomposition<T>> {
    check_square(m)?;
    let dev = hermiticity_deviation(m);
    if dev > T::lit(EIG_HERMITICITY) {
        return Err(Error::NotHermitian { deviation: dev.as_f64() });
    }
    let eig = SymmetricEigen::new(hermitize(m));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let n = m.nrows();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(EigenDecomposition { values, vectors })
}

impl<T: Real> EigenDecomposition<T> {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, i: usize) -> ComplexVector<T> {
        self.vectors.column(i).into_owned()
    }

    pub fn min(&self) -> T {
        self.values[0]
    }

    pub fn max(&self) -> T {
        self.values[self.values.len() - 1]
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let n = self.dim();
        let scaled = ComplexMatrix::from_fn(n, n, |r, c| self.vectors[(r, c)] * self.values[c]);
        scaled * self.vectors.adjoint()
    }

    /// Applies `f` to the spectrum: `V f(Λ) V†`.
    pub fn map_spectrum(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let n = self.dim();
        let scaled =
            ComplexMatrix::from_fn(n, n, |r, c| self.vectors[(r, c)] * f(self.values[c]));
        hermitize(&(scaled * self.vectors.adjoint()))
    }

    /// Groups consecutive eigenvalues whose gap is within `rel_gap·max(1, max|λ|)`.
    pub fn groups(&self, rel_gap: f64) -> Vec<EigenGroup<T>> {
        let scale = self
            .values
            .iter()
            .fold(T::one(), |acc, v| acc.max(v.abs()));
        let gap = T::lit(rel_gap) * scale;
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.dim() {
            match groups.last_mut() {
                Some(g) if self.values[i] - self.values[*g.last().unwrap()] <= gap => g.push(i),
                _ => groups.push(vec![i]),
            }
        }
        groups
            .into_iter()
            .map(|indices| {
                let sum = indices.iter().fold(T::zero(), |acc, &i| acc + self.values[i]);
                EigenGroup { value: sum / T::lit(indices.len() as f64), indices }
            })
            .collect()
    }

    /// Projector onto the span of the eigenvectors at `indices`.
    pub fn projector(&self, indices: &[usize]) -> ComplexMatrix<T> {
        super::projector_from_columns(self.dim(), indices.iter().map(|&i| self.vector(i)))
    }

    /// Reconstruction error relative to the input scale.
    pub fn reconstruction_error(&self, m: &ComplexMatrix<T>) -> T {
        max_abs(&(m - self.reconstruct()))
    }
}
