// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use super::{check_square, eig_hermitian, hermiticity_deviation, hermitize, ComplexMatrix, Projector};
use crate::{Error, Real, Result, Tolerances};

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralComponent<T: Real> {
    pub value: T,
    pub projector: Projector<T>,
}

/// Hermitian operator together with its grouped spectral decomposition
/// `A = Σ λᵢ Pᵢ`, eigenvalues distinct and ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianObservable<T: Real> {
    matrix: ComplexMatrix<T>,
    spectral: Vec<SpectralComponent<T>>,
}

impl<T: Real> HermitianObservable<T> {
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
        let eig = eig_hermitian(&m)?;
        let spectral = eig
            .groups(tol.degeneracy)
            .into_iter()
            .map(|g| SpectralComponent {
                value: g.value,
                projector: Projector::from_matrix_unchecked(eig.projector(&g.indices)),
            })
            .collect();
        Ok(Self { matrix: m, spectral })
    }

    /// Observable `Σ λᵢ Pᵢ` from explicit components.
    pub fn from_spectral(components: Vec<SpectralComponent<T>>) -> Result<Self> {
        let first = components.first().ok_or(Error::Empty)?;
        let dim = first.projector.dim();
        let mut m = ComplexMatrix::zeros(dim, dim);
        for c in &components {
            super::check_dim(dim, c.projector.dim())?;
            m += c.projector.matrix() * c.value.cplx();
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn spectral(&self) -> &[SpectralComponent<T>] {
        &self.spectral
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        eig_hermitian(&self.matrix).map(|e| e.values).unwrap_or_default()
    }
}
