// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! Indirect measurement: the system couples to a probe through a unitary,
//! then a projective meter reads the probe.
//!
//! `𝓘(x)ρ = Tr_probe[(I ⊗ Mₓ) U (ρ ⊗ σ) U† (I ⊗ Mₓ)]`
//!
//! The composite space is `system ⊗ probe` with the crate's Kronecker layout.

use nalgebra::Complex;

use super::QuantumInstrument;
use crate::hilbert::{
    check_dim, check_square, eig_hermitian, identity, max_abs, ComplexMatrix, DensityOperator,
    Projector, StateVector,
};
use crate::{Error, Real, Result, Tolerances};

/// Probe weights below this are dropped from the Kraus expansion.
const PROBE_WEIGHT_FLOOR: f64 = 1e-15;

/// Builds the instrument realized by an indirect measurement scheme, in Kraus
/// form. With the probe state `σ = Σⱼ sⱼ|j⟩⟨j|` and an orthonormal basis
/// `{|m⟩}` of each meter range, the Kraus operators are
/// `K_{x,j,m} = √sⱼ (I ⊗ ⟨m|) U (I ⊗ |j⟩)`.
pub fn indirect_instrument<T: Real>(
    probe: &DensityOperator<T>,
    unitary: &ComplexMatrix<T>,
    meter: &[(String, Projector<T>)],
) -> Result<QuantumInstrument<T>> {
    let tol = Tolerances::default();
    let dp = probe.dim();
    let total = check_square(unitary)?;
    if total % dp != 0 {
        return Err(Error::DimensionMismatch { expected: dp * (total / dp).max(1), found: total });
    }
    let ds = total / dp;
    let udev = max_abs(&(unitary.adjoint() * unitary - identity::<T>(total)));
    if udev > T::lit(tol.unitarity) {
        return Err(Error::NotUnitary { deviation: udev.as_f64() });
    }
    if meter.is_empty() {
        return Err(Error::Empty);
    }
    let mut sum = ComplexMatrix::<T>::zeros(dp, dp);
    for (_, m) in meter {
        check_dim(dp, m.dim())?;
        sum += m.matrix();
    }
    let mdev = max_abs(&(sum - identity::<T>(dp)));
    if mdev > T::lit(tol.completeness) {
        return Err(Error::MeterIncomplete { deviation: mdev.as_f64() });
    }

    let probe_eig = eig_hermitian(probe.matrix())?;
    let mut table = Vec::with_capacity(meter.len());
    for (label, m) in meter {
        let meig = eig_hermitian(m.matrix())?;
        let range: Vec<_> = (0..dp)
            .filter(|&i| meig.values[i] > T::lit(0.5))
            .map(|i| meig.vector(i))
            .collect();
        let mut kraus = Vec::new();
        for j in 0..dp {
            let weight = probe_eig.values[j];
            if weight <= T::lit(PROBE_WEIGHT_FLOOR) {
                continue;
            }
            let sj = weight.sqrt();
            let jv = probe_eig.vector(j);
            for mv in &range {
                let k = ComplexMatrix::from_fn(ds, ds, |a, b| {
                    let mut acc = Complex::new(T::zero(), T::zero());
                    for p in 0..dp {
                        let mp = mv[p].conj();
                        for q in 0..dp {
                            acc += mp * unitary[(a * dp + p, b * dp + q)] * jv[q];
                        }
                    }
                    acc * sj
                });
                kraus.push(k);
            }
        }
        if kraus.is_empty() {
            kraus.push(ComplexMatrix::zeros(ds, ds));
        }
        table.push((label.clone(), kraus));
    }
    QuantumInstrument::from_kraus(table)
}

/// Unitary realization of an instrument.
#[derive(Debug, Clone)]
pub struct Dilation<T: Real> {
    pub probe: DensityOperator<T>,
    pub unitary: ComplexMatrix<T>,
    pub meter: Vec<(String, Projector<T>)>,
}

impl<T: Real> Dilation<T> {
    pub fn instrument(&self) -> Result<QuantumInstrument<T>> {
        indirect_instrument(&self.probe, &self.unitary, &self.meter)
    }
}

/// Stinespring dilation of an instrument with the smallest probe: one probe
/// level per Kraus operator, probe prepared in |0⟩.
pub fn dilate<T: Real>(inst: &QuantumInstrument<T>) -> Result<Dilation<T>> {
    let count = inst.maps().iter().map(|m| m.kraus().len()).sum();
    dilate_with(inst, count)
}

/// Dilation onto a probe of dimension `probe_dim` (at least the Kraus count).
/// Probe levels beyond the Kraus count are never populated and are assigned
/// to the last outcome's meter projector.
pub fn dilate_with<T: Real>(inst: &QuantumInstrument<T>, probe_dim: usize) -> Result<Dilation<T>> {
    let count: usize = inst.maps().iter().map(|m| m.kraus().len()).sum();
    if probe_dim < count {
        return Err(Error::InvalidArgument(format!(
            "probe dimension {probe_dim} is below the Kraus count {count}"
        )));
    }
    let ds = inst.dim();
    let dp = probe_dim;
    let n = ds * dp;
    let kraus: Vec<&ComplexMatrix<T>> = inst.maps().iter().flat_map(|m| m.kraus()).collect();

    // isometry |b⟩ ↦ Σₖ Kₖ|b⟩ ⊗ |k⟩
    let mut u = ComplexMatrix::<T>::zeros(n, n);
    for b in 0..ds {
        for (k, op) in kraus.iter().enumerate() {
            for a in 0..ds {
                u[(a * dp + k, b * dp)] = op[(a, b)];
            }
        }
    }
    let v = ComplexMatrix::from_fn(n, ds, |r, b| u[(r, b * dp)]);
    let complement = identity::<T>(n) - &v * v.adjoint();
    let eig = eig_hermitian(&complement)?;
    let mut fill = (0..n).filter(|&i| eig.values[i] > T::lit(0.5)).map(|i| eig.vector(i));
    for b in 0..ds {
        for q in 1..dp {
            let col = fill.next().ok_or(Error::Incomplete { deviation: f64::NAN })?;
            u.set_column(b * dp + q, &col);
        }
    }

    let mut meter = Vec::with_capacity(inst.outcomes().len());
    let mut level = 0;
    let last = inst.outcomes().len() - 1;
    for (i, (label, map)) in inst.outcomes().iter().zip(inst.maps()).enumerate() {
        let mut levels: Vec<usize> = (level..level + map.kraus().len()).collect();
        level += map.kraus().len();
        if i == last {
            levels.extend(level..dp);
        }
        meter.push((label.clone(), Projector::coordinate(dp, &levels)));
    }
    Ok(Dilation { probe: StateVector::basis(dp, 0).density(), unitary: u, meter })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::HermitianObservable;
    use crate::instruments::projection_instrument;
    use crate::{ops, random};

    fn computational_meter(d: usize) -> Vec<(String, Projector<f64>)> {
        (0..d).map(|i| (i.to_string(), Projector::coordinate(d, &[i]))).collect()
    }

    #[test]
    fn copy_interaction_reproduces_z_measurement() {
        let probe = StateVector::<f64>::basis(2, 0).density();
        let inst = indirect_instrument(&probe, &ops::cnot(), &computational_meter(2)).unwrap();
        // relabel to the eigenvalue labels of Z: |0⟩ ↔ +1, |1⟩ ↔ −1
        let z = projection_instrument(&HermitianObservable::new(ops::pauli_z::<f64>()).unwrap());
        let basis = crate::instruments::hermitian_basis::<f64>(2);
        for (meter_label, z_label) in [("0", "+1"), ("1", "-1")] {
            let a = inst.map(meter_label).unwrap();
            let b = z.map(z_label).unwrap();
            for h in &basis {
                assert!(max_abs(&(a.apply(h) - b.apply(h))) <= 1e-10);
            }
        }
    }

    #[test]
    fn trivial_coupling_gives_probe_statistics() {
        let probe = DensityOperator::<f64>::from_diagonal(&[0.3, 0.7]).unwrap();
        let inst = indirect_instrument(&probe, &identity(4), &computational_meter(2)).unwrap();
        let mut rng = random::seeded(2);
        for _ in 0..10 {
            let rho = random::density::<f64, _>(&mut rng, 2);
            assert!((inst.probability("0", &rho).unwrap() - 0.3).abs() < 1e-12);
            assert!((inst.probability("1", &rho).unwrap() - 0.7).abs() < 1e-12);
            let out = inst.map("1").unwrap().apply(rho.matrix());
            assert!(max_abs(&(out - rho.matrix() * Complex::new(0.7, 0.0))) < 1e-12);
        }
    }

    #[test]
    fn one_dimensional_probe_is_a_unitary_channel() {
        let mut rng = random::seeded(8);
        let u = random::unitary::<f64, _>(&mut rng, 3);
        let probe = DensityOperator::<f64>::maximally_mixed(1);
        let inst = indirect_instrument(&probe, &u, &computational_meter(1)).unwrap();
        assert_eq!(inst.outcomes().len(), 1);
        let rho = random::density::<f64, _>(&mut rng, 3);
        let expected = &u * rho.matrix() * u.adjoint();
        assert!(max_abs(&(inst.non_selective(&rho).unwrap().matrix() - expected)) < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let probe = StateVector::<f64>::basis(2, 0).density();
        let mut bad = ops::cnot::<f64>();
        bad[(0, 0)] = Complex::new(2.0, 0.0);
        assert!(matches!(
            indirect_instrument(&probe, &bad, &computational_meter(2)),
            Err(Error::NotUnitary { .. })
        ));
        let partial = vec![("0".to_string(), Projector::coordinate(2, &[0]))];
        assert!(matches!(
            indirect_instrument(&probe, &ops::cnot(), &partial),
            Err(Error::MeterIncomplete { .. })
        ));
    }

    #[test]
    fn random_dilations_validate() {
        let mut rng = random::seeded(50);
        for case in 0..50 {
            let ds = 2 + case % 3;
            let dp = 2 + case % 2;
            let u = random::unitary::<f64, _>(&mut rng, ds * dp);
            let probe = random::density::<f64, _>(&mut rng, dp);
            let meter: Vec<_> = random::resolution::<f64, _>(&mut rng, dp, 2)
                .into_iter()
                .enumerate()
                .map(|(i, p)| (i.to_string(), p))
                .collect();
            let inst = indirect_instrument(&probe, &u, &meter).unwrap();
            assert!(inst.completeness_deviation() <= 1e-10);
        }
    }

    #[test]
    fn dilation_round_trip() {
        let mut rng = random::seeded(13);
        let probe = random::density::<f64, _>(&mut rng, 2);
        let u = random::unitary::<f64, _>(&mut rng, 6);
        let meter: Vec<_> = computational_meter(2);
        let inst = indirect_instrument(&probe, &u, &meter).unwrap();
        let d = dilate(&inst).unwrap();
        assert!(random::is_unitary(&d.unitary, 1e-12));
        let back = d.instrument().unwrap();
        assert!(inst.action_distance(&back).unwrap() < 1e-12);
        let wide = dilate_with(&inst, 7).unwrap().instrument().unwrap();
        assert!(inst.action_distance(&wide).unwrap() < 1e-12);
        assert!(dilate_with(&inst, 2).is_err());
    }
}
