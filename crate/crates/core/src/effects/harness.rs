// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! Instrument family for certifying order effects together with response
//! replicability and the QQ-equality.
//!
//! Projective (Lüders) instruments cannot show the order effect and
//! replicability at once: after `A` then `B` the state has to remember both
//! answers. The family here makes the memory explicit. The system is
//! `opinion (ℂ²) ⊗ A-register (ℂ³) ⊗ B-register (ℂ³)`, register levels
//! being 0 = not yet asked, 1 = answered yes, 2 = answered no.
//!
//! Asking `A` with an empty register measures the opinion qubit in the
//! basis `R_A|0⟩, R_A|1⟩` (with `R_A` an Euler rotation), collapses it and
//! records the answer; asking again reads the register and leaves the state
//! alone. `B` works the same way on its own register. Each instrument is
//! realized through a unitary coupling with a probe (the Stinespring
//! dilation of its Kraus form), so the certified instruments are genuine
//! indirect-measurement instruments.

use nalgebra::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{verify_effect_profile, EffectProfile, Expectations};
use crate::hilbert::{ComplexMatrix, ComplexVector, DensityOperator, StateVector};
use crate::instruments::{dilate_with, Dilation, QuantumInstrument};
use crate::{ops, Real, Result};

const REGISTER: usize = 3;
const OPINION: usize = 2;
pub const SYSTEM_DIM: usize = OPINION * REGISTER * REGISTER;

/// Parameters of one member of the family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MemoryRegisterParams {
    /// Bloch angles `(θ, φ)` of the initial opinion `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`.
    pub opinion: [f64; 2],
    /// Euler angles `(α, β, γ)` of `R_A = Rz(α) Ry(β) Rz(γ)`.
    pub a_euler: [f64; 3],
    pub b_euler: [f64; 3],
    /// Probe dimension of the dilations (at least 4).
    pub probe_dim: usize,
}

/// A realized member: the two dilations, the instruments they implement and
/// the initial state with both registers empty.
#[derive(Debug, Clone)]
pub struct RegisterScenario<T: Real> {
    pub a_dilation: Dilation<T>,
    pub b_dilation: Dilation<T>,
    pub a: QuantumInstrument<T>,
    pub b: QuantumInstrument<T>,
    pub state: DensityOperator<T>,
}

/// Matrix unit |r⟩⟨c| on a register.
fn unit<T: Real>(r: usize, c: usize) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(REGISTER, REGISTER);
    m[(r, c)] = T::one().cplx();
    m
}

fn kron3<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    c: &ComplexMatrix<T>,
) -> ComplexMatrix<T> {
    a.kronecker(b).kronecker(c)
}

/// Kraus table of the question acting on register slot `slot` (0 for A, 1 for B).
fn question_kraus<T: Real>(euler: [f64; 3], slot: usize) -> Vec<(String, Vec<ComplexMatrix<T>>)> {
    let rot = ops::euler_rotation::<T>(euler[0], euler[1], euler[2]);
    let id_op = crate::hilbert::identity::<T>(OPINION);
    let id_reg = crate::hilbert::identity::<T>(REGISTER);
    let place = |op: ComplexMatrix<T>, reg: ComplexMatrix<T>| {
        if slot == 0 {
            kron3(&op, &reg, &id_reg)
        } else {
            kron3(&op, &id_reg, &reg)
        }
    };
    [("yes", 0usize, 1usize), ("no", 1, 2)]
        .into_iter()
        .map(|(label, basis, level)| {
            let v = rot.column(basis).into_owned();
            let p = &v * v.adjoint();
            (
                label.to_string(),
                vec![
                    place(p, unit(level, 0)),
                    place(id_op.clone(), unit(level, level)),
                ],
            )
        })
        .collect()
}

/// Builds the dilated instrument pair and initial state for `params`.
pub fn memory_register_pair<T: Real>(params: &MemoryRegisterParams) -> Result<RegisterScenario<T>> {
    let a_kraus = QuantumInstrument::from_kraus(question_kraus::<T>(params.a_euler, 0))?;
    let b_kraus = QuantumInstrument::from_kraus(question_kraus::<T>(params.b_euler, 1))?;
    let a_dilation = dilate_with(&a_kraus, params.probe_dim)?;
    let b_dilation = dilate_with(&b_kraus, params.probe_dim)?;
    let a = a_dilation.instrument()?;
    let b = b_dilation.instrument()?;

    let [theta, phi] = params.opinion;
    let opinion = StateVector::new(ComplexVector::from_vec(vec![
        T::lit((theta / 2.0).cos()).cplx(),
        Complex::new(T::lit(phi.cos()), T::lit(phi.sin())) * T::lit((theta / 2.0).sin()),
    ]))?;
    let empty = StateVector::basis(REGISTER, 0);
    let state = opinion.tensor(&empty).tensor(&empty).density();
    Ok(RegisterScenario { a_dilation, b_dilation, a, b, state })
}

/// Random search over the family for parameters meeting `expect`.
/// Returns the first passing member with its profile.
pub fn search_reference<R: Rng + ?Sized>(
    rng: &mut R,
    max_trials: usize,
    probe_dim: usize,
    expect: &Expectations,
) -> Result<Option<(MemoryRegisterParams, EffectProfile<f64>)>> {
    use std::f64::consts::PI;
    for _ in 0..max_trials {
        let mut angle = |hi: f64| (rng.random_range(0.0..hi) * 1e4).round() / 1e4;
        let params = MemoryRegisterParams {
            opinion: [angle(PI), angle(2.0 * PI)],
            a_euler: [angle(2.0 * PI), angle(PI), angle(2.0 * PI)],
            b_euler: [angle(2.0 * PI), angle(PI), angle(2.0 * PI)],
            probe_dim,
        };
        let s = memory_register_pair::<f64>(&params)?;
        let (profile, pass) = verify_effect_profile(&s.a, &s.b, &s.state, expect)?;
        if pass {
            return Ok(Some((params, profile)));
        }
    }
    Ok(None)
}

/// The stored reference parameters.
pub fn reference_params() -> MemoryRegisterParams {
    serde_json::from_str(include_str!("../../fixtures/effect_profile_reference.json"))
        .expect("reference fixture is valid JSON")
}
