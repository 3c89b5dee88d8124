// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! Quantum instruments in Kraus form.
//!
//! An instrument assigns to each outcome `x` a completely positive map
//! `𝓘(x)ρ = Σₖ Kₓₖ ρ Kₓₖ†`; the maps sum to a trace-preserving channel,
//! which is the single identity `Σₓ Σₖ Kₓₖ† Kₓₖ = I`.

mod indirect;
mod record;
mod sequential;

pub use indirect::{dilate, dilate_with, indirect_instrument, Dilation};
pub use record::InstrumentRecord;
pub use sequential::{sequential_distribution, JointDistribution};

use nalgebra::Complex;

use crate::hilbert::{
    check_dim, check_square, eig_hermitian, hermiticity_deviation, hermitize, identity, max_abs,
    ComplexMatrix, DensityOperator, HermitianObservable, Projector,
};
use crate::{Error, Real, Result, Tolerances};

/// Probability below which a state update is refused.
pub const UPDATE_THRESHOLD: f64 = 1e-12;

/// Completely positive map `ρ ↦ Σₖ Kₖ ρ Kₖ†`.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator<T: Real> {
    dim: usize,
    kraus: Vec<ComplexMatrix<T>>,
}

impl<T: Real> Superoperator<T> {
    pub fn new(kraus: Vec<ComplexMatrix<T>>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::Empty)?;
        let dim = check_square(first)?;
        for k in &kraus {
            check_dim(dim, check_square(k)?)?;
        }
        Ok(Self { dim, kraus })
    }

    pub fn identity(dim: usize) -> Self {
        Self { dim, kraus: vec![identity(dim)] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix<T>] {
        &self.kraus
    }

    /// Applies the map to an arbitrary operator.
    pub fn apply(&self, m: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        self.kraus.iter().fold(ComplexMatrix::zeros(self.dim, self.dim), |acc, k| {
            acc + k * m * k.adjoint()
        })
    }

    /// `Σₖ Kₖ† Kₖ`.
    pub fn effect(&self) -> ComplexMatrix<T> {
        hermitize(&self.kraus.iter().fold(ComplexMatrix::zeros(self.dim, self.dim), |acc, k| {
            acc + k.adjoint() * k
        }))
    }

    /// Matrix of the map acting on column-stacked operators: `Σₖ conj(Kₖ) ⊗ Kₖ`.
    pub fn to_matrix(&self) -> ComplexMatrix<T> {
        let n = self.dim * self.dim;
        self.kraus.iter().fold(ComplexMatrix::zeros(n, n), |acc, k| {
            acc + k.map(|z| z.conj()).kronecker(k)
        })
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        check_dim(self.dim, next.dim)?;
        let kraus = next
            .kraus
            .iter()
            .flat_map(|b| self.kraus.iter().map(move |a| b * a))
            .collect();
        Ok(Self { dim: self.dim, kraus })
    }

    /// `I_d ⊗ K` for every Kraus operator (acts on the second factor).
    pub fn extend_left(&self, d: usize) -> Self {
        let id = identity::<T>(d);
        Self { dim: d * self.dim, kraus: self.kraus.iter().map(|k| id.kronecker(k)).collect() }
    }

    /// `K ⊗ I_d` for every Kraus operator (acts on the first factor).
    pub fn extend_right(&self, d: usize) -> Self {
        let id = identity::<T>(d);
        Self { dim: d * self.dim, kraus: self.kraus.iter().map(|k| k.kronecker(&id)).collect() }
    }
}

/// POVM element `0 ≤ E ≤ I`.
#[derive(Debug, Clone, PartialEq)]
pub struct Effect<T: Real> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> Effect<T> {
    pub fn new(m: ComplexMatrix<T>) -> Result<Self> {
        let tol = Tolerances::default();
        check_square(&m)?;
        let dev = hermiticity_deviation(&m);
        if dev > T::lit(tol.hermiticity) {
            return Err(Error::NotHermitian { deviation: dev.as_f64() });
        }
        let m = hermitize(&m);
        let eig = eig_hermitian(&m)?;
        let floor = T::lit(tol.psd_floor);
        if eig.min() < -floor {
            return Err(Error::NotEffect { eigenvalue: eig.min().as_f64() });
        }
        if eig.max() > T::one() + floor {
            return Err(Error::NotEffect { eigenvalue: eig.max().as_f64() });
        }
        Ok(Self { matrix: m })
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn probability(&self, rho: &DensityOperator<T>) -> T {
        rho.expectation(&self.matrix)
    }
}

/// Finite-outcome quantum instrument.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumInstrument<T: Real> {
    outcomes: Vec<String>,
    maps: Vec<Superoperator<T>>,
}

/// Outcome label of an eigenvalue: signed, at most nine decimals.
pub fn eigenvalue_label(v: f64) -> String {
    let r = (v * 1e9).round() / 1e9;
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r:+}")
    }
}

impl<T: Real> QuantumInstrument<T> {
    /// Validates a table `outcome → Kraus list` (completeness, dimensions, unique labels).
    pub fn from_kraus(table: Vec<(String, Vec<ComplexMatrix<T>>)>) -> Result<Self> {
        Self::from_kraus_with(table, &Tolerances::default())
    }

    pub fn from_kraus_with(
        table: Vec<(String, Vec<ComplexMatrix<T>>)>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if table.is_empty() {
            return Err(Error::Empty);
        }
        let mut outcomes = Vec::with_capacity(table.len());
        let mut maps = Vec::with_capacity(table.len());
        for (label, kraus) in table {
            if outcomes.contains(&label) {
                return Err(Error::DuplicateOutcome(label));
            }
            let map = Superoperator::new(kraus)?;
            if let Some(first) = maps.first() {
                check_dim(Superoperator::dim(first), map.dim())?;
            }
            outcomes.push(label);
            maps.push(map);
        }
        let inst = Self { outcomes, maps };
        let deviation = inst.completeness_deviation();
        if deviation > T::lit(tol.completeness) {
            return Err(Error::Incomplete { deviation: deviation.as_f64() });
        }
        Ok(inst)
    }

    /// Lüders instrument of an observable: `ρ ↦ Pₓ ρ Pₓ` per distinct eigenvalue.
    pub fn projection(observable: &HermitianObservable<T>) -> Self {
        let (outcomes, maps) = observable
            .spectral()
            .iter()
            .map(|c| {
                (
                    eigenvalue_label(c.value.as_f64()),
                    Superoperator { dim: observable.dim(), kraus: vec![c.projector.matrix().clone()] },
                )
            })
            .unzip();
        Self { outcomes, maps }
    }

    /// Two-outcome Lüders instrument: "yes" ↦ P, "no" ↦ I − P.
    pub fn yes_no(p: &Projector<T>) -> Self {
        let dim = p.dim();
        Self {
            outcomes: vec!["yes".into(), "no".into()],
            maps: vec![
                Superoperator { dim, kraus: vec![p.matrix().clone()] },
                Superoperator { dim, kraus: vec![p.complement().matrix().clone()] },
            ],
        }
    }

    /// Single-outcome identity instrument.
    pub fn trivial(dim: usize) -> Self {
        Self { outcomes: vec!["id".into()], maps: vec![Superoperator::identity(dim)] }
    }

    /// Single-outcome channel.
    pub fn channel(map: Superoperator<T>) -> Result<Self> {
        Self::from_kraus(vec![("id".into(), map.kraus)])
    }

    pub fn dim(&self) -> usize {
        self.maps[0].dim()
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn maps(&self) -> &[Superoperator<T>] {
        &self.maps
    }

    pub fn index_of(&self, outcome: &str) -> Result<usize> {
        self.outcomes
            .iter()
            .position(|o| o == outcome)
            .ok_or_else(|| Error::UnknownOutcome(outcome.to_string()))
    }

    pub fn map(&self, outcome: &str) -> Result<&Superoperator<T>> {
        Ok(&self.maps[self.index_of(outcome)?])
    }

    /// `‖Σₓ Eₓ − I‖`.
    pub fn completeness_deviation(&self) -> T {
        let sum = self.maps.iter().fold(ComplexMatrix::zeros(self.dim(), self.dim()), |acc, m| {
            acc + m.effect()
        });
        max_abs(&(sum - identity::<T>(self.dim())))
    }

    /// Born rule `Tr[𝓘(x)ρ]`, clamped to [0, 1].
    pub fn probability(&self, outcome: &str, rho: &DensityOperator<T>) -> Result<T> {
        check_dim(self.dim(), rho.dim())?;
        let map = self.map(outcome)?;
        Ok(clamp01(map.apply(rho.matrix()).trace().re))
    }

    pub fn probabilities(&self, rho: &DensityOperator<T>) -> Result<Vec<T>> {
        check_dim(self.dim(), rho.dim())?;
        Ok(self.maps.iter().map(|m| clamp01(m.apply(rho.matrix()).trace().re)).collect())
    }

    /// Post-measurement state `𝓘(x)ρ / Tr[𝓘(x)ρ]`.
    pub fn update(&self, outcome: &str, rho: &DensityOperator<T>) -> Result<DensityOperator<T>> {
        check_dim(self.dim(), rho.dim())?;
        let out = self.map(outcome)?.apply(rho.matrix());
        let p = out.trace().re;
        if !(p > T::lit(UPDATE_THRESHOLD)) {
            return Err(Error::NullEvent { probability: p.as_f64() });
        }
        Ok(DensityOperator::from_hermitian_unchecked(out.unscale(p)))
    }

    /// Unconditional state `Σₓ 𝓘(x)ρ`.
    pub fn non_selective(&self, rho: &DensityOperator<T>) -> Result<DensityOperator<T>> {
        check_dim(self.dim(), rho.dim())?;
        let sum = self.maps.iter().fold(ComplexMatrix::zeros(self.dim(), self.dim()), |acc, m| {
            acc + m.apply(rho.matrix())
        });
        Ok(DensityOperator::from_hermitian_unchecked(sum))
    }

    /// POVM `x ↦ Σₖ Kₓₖ† Kₓₖ`.
    pub fn povm(&self) -> Vec<(String, Effect<T>)> {
        self.outcomes
            .iter()
            .zip(&self.maps)
            .map(|(o, m)| (o.clone(), Effect { matrix: m.effect() }))
            .collect()
    }

    /// Same instrument acting on the second factor of `C^d ⊗ H`.
    pub fn extend_left(&self, d: usize) -> Self {
        Self {
            outcomes: self.outcomes.clone(),
            maps: self.maps.iter().map(|m| m.extend_left(d)).collect(),
        }
    }

    /// Same instrument acting on the first factor of `H ⊗ C^d`.
    pub fn extend_right(&self, d: usize) -> Self {
        Self {
            outcomes: self.outcomes.clone(),
            maps: self.maps.iter().map(|m| m.extend_right(d)).collect(),
        }
    }

    /// Largest difference between the two instruments' maps on a basis of
    /// Hermitian matrices, matching outcomes by label. `None` if the outcome
    /// sets or dimensions differ.
    pub fn action_distance(&self, other: &Self) -> Option<T> {
        if self.outcomes.len() != other.outcomes.len() || self.dim() != other.dim() {
            return None;
        }
        let basis = hermitian_basis::<T>(self.dim());
        let mut worst = T::zero();
        for (label, a) in self.outcomes.iter().zip(&self.maps) {
            let b = other.map(label).ok()?;
            for h in &basis {
                worst = worst.max(max_abs(&(a.apply(h) - b.apply(h))));
            }
        }
        Some(worst)
    }
}

/// Real basis of the Hermitian `d×d` matrices: `Eᵢᵢ`, `Eᵢⱼ + Eⱼᵢ`, `i(Eᵢⱼ − Eⱼᵢ)`.
pub fn hermitian_basis<T: Real>(d: usize) -> Vec<ComplexMatrix<T>> {
    let mut out = Vec::with_capacity(d * d);
    let one = T::one().cplx();
    let i = Complex::new(T::zero(), T::one());
    for r in 0..d {
        for c in r..d {
            let mut m = ComplexMatrix::zeros(d, d);
            if r == c {
                m[(r, r)] = one;
                out.push(m);
            } else {
                m[(r, c)] = one;
                m[(c, r)] = one;
                out.push(m.clone());
                let mut n = ComplexMatrix::zeros(d, d);
                n[(r, c)] = i;
                n[(c, r)] = -i;
                out.push(n);
            }
        }
    }
    out
}

fn clamp01<T: Real>(p: T) -> T {
    p.max(T::zero()).min(T::one())
}

pub fn projection_instrument<T: Real>(a: &HermitianObservable<T>) -> QuantumInstrument<T> {
    QuantumInstrument::projection(a)
}

pub fn instrument_from_kraus<T: Real>(
    table: Vec<(String, Vec<ComplexMatrix<T>>)>,
) -> Result<QuantumInstrument<T>> {
    QuantumInstrument::from_kraus(table)
}

pub fn outcome_probability<T: Real>(
    inst: &QuantumInstrument<T>,
    outcome: &str,
    rho: &DensityOperator<T>,
) -> Result<T> {
    inst.probability(outcome, rho)
}

pub fn state_update<T: Real>(
    inst: &QuantumInstrument<T>,
    outcome: &str,
    rho: &DensityOperator<T>,
) -> Result<DensityOperator<T>> {
    inst.update(outcome, rho)
}

pub fn povm_of<T: Real>(inst: &QuantumInstrument<T>) -> Vec<(String, Effect<T>)> {
    inst.povm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{diag, validate_density, StateVector};
    use crate::{ops, random};

    fn z_inst() -> QuantumInstrument<f64> {
        projection_instrument(&HermitianObservable::new(ops::pauli_z()).unwrap())
    }

    fn plus_rho() -> DensityOperator<f64> {
        ops::plus::<f64>().density()
    }

    #[test]
    fn pauli_z_projection_instrument() {
        let z = z_inst();
        assert_eq!(z.outcomes(), &["-1".to_string(), "+1".to_string()]);
        assert_eq!(z.map("+1").unwrap().kraus()[0], diag(&[1.0, 0.0]));
        assert_eq!(z.map("-1").unwrap().kraus()[0], diag(&[0.0, 1.0]));
        assert_eq!(z.completeness_deviation(), 0.0);
    }

    #[test]
    fn identity_and_degenerate_observables() {
        let i = projection_instrument(&HermitianObservable::<f64>::new(identity(2)).unwrap());
        assert_eq!(i.outcomes().len(), 1);
        assert!(max_abs(&(i.maps()[0].kraus()[0].clone() - identity::<f64>(2))) < 1e-14);

        let d = projection_instrument(&HermitianObservable::new(diag::<f64>(&[1.0, 1.0, 0.0])).unwrap());
        assert_eq!(d.outcomes(), &["0".to_string(), "+1".to_string()]);
        let p = Projector::new(d.map("+1").unwrap().kraus()[0].clone()).unwrap();
        assert_eq!(p.rank(), 2);
    }

    #[test]
    fn kraus_constructor_matches_projection() {
        let k = instrument_from_kraus(vec![
            ("-1".into(), vec![diag::<f64>(&[0.0, 1.0])]),
            ("+1".into(), vec![diag(&[1.0, 0.0])]),
        ])
        .unwrap();
        assert_eq!(k.action_distance(&z_inst()), Some(0.0));
    }

    #[test]
    fn amplitude_damping_channel_is_complete() {
        let g: f64 = 0.3;
        let k0 = diag(&[1.0, (1.0 - g).sqrt()]);
        let mut k1 = ComplexMatrix::zeros(2, 2);
        k1[(0, 1)] = Complex::new(g.sqrt(), 0.0);
        let inst = instrument_from_kraus(vec![("id".into(), vec![k0, k1])]).unwrap();
        assert!(inst.completeness_deviation() < 1e-15);
    }

    #[test]
    fn scaled_identity_is_incomplete() {
        let err = instrument_from_kraus(vec![("x".into(), vec![identity::<f64>(2) * Complex::new(0.5, 0.0)])])
            .unwrap_err();
        assert!(matches!(err, Error::Incomplete { deviation } if (deviation - 0.75).abs() < 1e-15));
    }

    #[test]
    fn born_probabilities() {
        let z = z_inst();
        let zero = StateVector::<f64>::basis(2, 0).density();
        assert_eq!(outcome_probability(&z, "+1", &zero).unwrap(), 1.0);
        let mixed = DensityOperator::<f64>::maximally_mixed(2);
        assert!((outcome_probability(&z, "+1", &mixed).unwrap() - 0.5).abs() < 1e-15);
        assert!((outcome_probability(&z, "+1", &plus_rho()).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(z.probability("maybe", &mixed), Err(Error::UnknownOutcome(_))));
    }

    #[test]
    fn state_updates() {
        let z = z_inst();
        let up = state_update(&z, "+1", &plus_rho()).unwrap();
        assert!(max_abs(&(up.matrix() - diag(&[1.0, 0.0]))) < 1e-15);
        let zero = StateVector::<f64>::basis(2, 0).density();
        assert_eq!(state_update(&z, "+1", &zero).unwrap().matrix(), zero.matrix());
        assert!(matches!(state_update(&z, "-1", &zero), Err(Error::NullEvent { .. })));
    }

    #[test]
    fn unsharp_coin_effects() {
        let a = diag::<f64>(&[0.8f64.sqrt(), 0.2f64.sqrt()]);
        let b = diag::<f64>(&[0.2f64.sqrt(), 0.8f64.sqrt()]);
        let inst = instrument_from_kraus(vec![("h".into(), vec![a]), ("t".into(), vec![b])]).unwrap();
        let povm = povm_of(&inst);
        assert!(max_abs(&(povm[0].1.matrix() - diag(&[0.8, 0.2]))) < 1e-15);
        assert!(max_abs(&(povm[1].1.matrix() - diag(&[0.2, 0.8]))) < 1e-15);
    }

    #[test]
    fn effect_validation() {
        assert!(Effect::new(diag::<f64>(&[0.3, 1.0])).is_ok());
        assert!(matches!(Effect::new(diag::<f64>(&[1.2, 0.0])), Err(Error::NotEffect { .. })));
        assert!(matches!(Effect::new(diag::<f64>(&[-0.2, 0.0])), Err(Error::NotEffect { .. })));
    }

    #[test]
    fn repeatability_of_projection_instruments() {
        let mut rng = random::seeded(9);
        for dim in 2..5 {
            let a = HermitianObservable::new(random::hermitian::<f64, _>(&mut rng, dim)).unwrap();
            let inst = projection_instrument(&a);
            let rho = random::density::<f64, _>(&mut rng, dim);
            for x in inst.outcomes() {
                let once = inst.update(x, &rho).unwrap();
                let twice = inst.update(x, &once).unwrap();
                assert!(max_abs(&(once.matrix() - twice.matrix())) < 1e-12);
                assert!((inst.probability(x, &once).unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn povm_consistency_on_random_states() {
        let mut rng = random::seeded(21);
        let probe = random::density::<f64, _>(&mut rng, 2);
        let u = random::unitary::<f64, _>(&mut rng, 6);
        let meter = random::resolution::<f64, _>(&mut rng, 2, 2);
        let meter: Vec<_> = meter.into_iter().enumerate().map(|(i, p)| (i.to_string(), p)).collect();
        let inst = indirect_instrument(&probe, &u, &meter).unwrap();
        let povm = inst.povm();
        for _ in 0..100 {
            let rho = random::density::<f64, _>(&mut rng, 3);
            for (x, e) in &povm {
                let p = inst.probability(x, &rho).unwrap();
                assert!((e.probability(&rho) - p).abs() <= 1e-10);
            }
            let total = inst.non_selective(&rho).unwrap();
            assert!((total.trace() - 1.0).abs() <= 1e-10);
            assert!(validate_density(total.matrix()).is_ok());
        }
    }

    #[test]
    fn superoperator_matrix_matches_action() {
        let mut rng = random::seeded(4);
        let k: Vec<_> = (0..2).map(|_| random::ginibre::<f64, _>(&mut rng, 3, 3)).collect();
        let s = Superoperator::new(k).unwrap();
        let m = random::ginibre::<f64, _>(&mut rng, 3, 3);
        let vec_m = nalgebra::DVector::from_column_slice(m.as_slice());
        let out = s.to_matrix() * vec_m;
        let direct = s.apply(&m);
        let direct_vec = nalgebra::DVector::from_column_slice(direct.as_slice());
        assert!(crate::hilbert::vec_max_abs(&(out - direct_vec)) < 1e-12);
    }

    #[test]
    fn hermitian_basis_spans() {
        assert_eq!(hermitian_basis::<f64>(3).len(), 9);
        assert!(hermitian_basis::<f64>(3).iter().all(|m| hermiticity_deviation(m) == 0.0));
    }
}
