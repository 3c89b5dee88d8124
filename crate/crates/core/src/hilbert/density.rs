// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use super::{
    check_square, diag, eig_hermitian, hermiticity_deviation, hermitize, partial_trace,
    tensor_with_cap, ComplexMatrix, Subsystem,
};
use crate::{DensityViolation, Error, Real, Result, Tolerances};

/// Hermitian, positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator<T: Real> {
    matrix: ComplexMatrix<T>,
}

/// Validates `m` with the default tolerances.
pub fn validate_density<T: Real>(m: &ComplexMatrix<T>) -> Result<DensityOperator<T>> {
    validate_density_with(m, &Tolerances::default())
}

/// Checks every density condition and reports all violated ones together.
pub fn validate_density_with<T: Real>(
    m: &ComplexMatrix<T>,
    tol: &Tolerances,
) -> Result<DensityOperator<T>> {
    check_square(m)?;
    let mut violations = Vec::new();
    let dev = hermiticity_deviation(m);
    if dev > T::lit(tol.hermiticity) {
        violations.push(DensityViolation::Hermiticity { deviation: dev.as_f64() });
    }
    let h = hermitize(m);
    // spectrum of the Hermitian part; eig_hermitian's own gate is looser
    let eig = eig_hermitian(&h)?;
    if eig.min() < -T::lit(tol.psd_floor) {
        violations.push(DensityViolation::Positivity { eigenvalue: eig.min().as_f64() });
    }
    let tr = m.trace().re;
    if (tr - T::one()).abs() > T::lit(tol.trace) {
        violations.push(DensityViolation::Trace { trace: tr.as_f64() });
    }
    if violations.is_empty() {
        Ok(DensityOperator { matrix: h })
    } else {
        Err(Error::InvalidDensity(violations))
    }
}

impl<T: Real> DensityOperator<T> {
    /// Hermitizes without checking positivity or trace. Callers must
    /// guarantee both (e.g. outputs of completely positive maps).
    pub(crate) fn from_hermitian_unchecked(m: ComplexMatrix<T>) -> Self {
        Self { matrix: hermitize(&m) }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let w = T::one() / T::lit(dim as f64);
        Self { matrix: diag(&vec![w; dim]) }
    }

    /// Diagonal density from probabilities (validated).
    pub fn from_diagonal(probabilities: &[T]) -> Result<Self> {
        validate_density(&diag(probabilities))
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> T {
        self.matrix.trace().re
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> T {
        super::trace_product_re(&self.matrix, &self.matrix)
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        eig_hermitian(&self.matrix).map(|e| e.values).unwrap_or_default()
    }

    /// Expectation `Re Tr[A ρ]` of a Hermitian operator.
    pub fn expectation(&self, a: &ComplexMatrix<T>) -> T {
        super::trace_product_re(a, &self.matrix)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let m = tensor_with_cap(&self.matrix, &other.matrix, Tolerances::default().dimension_cap)?;
        Ok(Self { matrix: m })
    }

    /// Reduced state of one factor.
    pub fn reduce(&self, dims: (usize, usize), keep: Subsystem) -> Result<Self> {
        Ok(Self::from_hermitian_unchecked(partial_trace(&self.matrix, dims, keep)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::identity;
    use nalgebra::Complex;

    #[test]
    fn maximally_mixed_is_valid() {
        let m = identity::<f64>(2) * Complex::new(0.5, 0.0);
        assert!(validate_density(&m).is_ok());
    }

    #[test]
    fn negative_eigenvalue_rejected() {
        let err = validate_density(&diag::<f64>(&[1.5, -0.5])).unwrap_err();
        match err {
            Error::InvalidDensity(v) => {
                assert_eq!(v.len(), 1);
                assert!(matches!(v[0], DensityViolation::Positivity { eigenvalue } if (eigenvalue + 0.5).abs() < 1e-12));
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn trace_deviation_rejected() {
        let err = validate_density(&diag::<f64>(&[0.6, 0.6])).unwrap_err();
        match err {
            Error::InvalidDensity(v) => {
                assert_eq!(v.len(), 1);
                assert!(matches!(v[0], DensityViolation::Trace { trace } if (trace - 1.2).abs() < 1e-12));
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = diag::<f64>(&[0.5, 0.5]);
        m[(0, 1)] = Complex::new(0.1, 0.0);
        let err = validate_density(&m).unwrap_err();
        assert!(matches!(err, Error::InvalidDensity(v) if matches!(v[0], DensityViolation::Hermiticity { .. })));
    }

    #[test]
    fn all_violations_reported() {
        let mut m = diag::<f64>(&[2.0, -0.5]);
        m[(0, 1)] = Complex::new(1e-6, 0.0);
        let Err(Error::InvalidDensity(v)) = validate_density(&m) else { panic!() };
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn tensor_of_densities_has_unit_trace() {
        let a = DensityOperator::<f64>::from_diagonal(&[0.3, 0.7]).unwrap();
        let b = DensityOperator::<f64>::maximally_mixed(3);
        let t = a.tensor(&b).unwrap();
        assert_eq!(t.dim(), 6);
        assert!((t.trace() - 1.0).abs() < 1e-15);
        assert!(validate_density(t.matrix()).is_ok());
    }
}
