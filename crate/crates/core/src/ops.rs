// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! Standard small operators and states.

use nalgebra::Complex;

use crate::hilbert::{ComplexMatrix, ComplexVector, StateVector};
use crate::Real;

fn m2<T: Real>(e: [[(f64, f64); 2]; 2]) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(2, 2, |r, c| Complex::new(T::lit(e[r][c].0), T::lit(e[r][c].1)))
}

pub fn pauli_x<T: Real>() -> ComplexMatrix<T> {
    m2([[(0., 0.), (1., 0.)], [(1., 0.), (0., 0.)]])
}

pub fn pauli_y<T: Real>() -> ComplexMatrix<T> {
    m2([[(0., 0.), (0., -1.)], [(0., 1.), (0., 0.)]])
}

pub fn pauli_z<T: Real>() -> ComplexMatrix<T> {
    m2([[(1., 0.), (0., 0.)], [(0., 0.), (-1., 0.)]])
}

/// Lowering operator `|0⟩⟨1|` (|0⟩ is the ground state).
pub fn sigma_minus<T: Real>() -> ComplexMatrix<T> {
    m2([[(0., 0.), (1., 0.)], [(0., 0.), (0., 0.)]])
}

/// Spin observable `cos θ·Z + sin θ·X` in the x–z plane.
pub fn spin_along<T: Real>(theta: f64) -> ComplexMatrix<T> {
    pauli_z::<T>() * T::lit(theta.cos()).cplx() + pauli_x::<T>() * T::lit(theta.sin()).cplx()
}

/// `|+⟩ = (|0⟩ + |1⟩)/√2`.
pub fn plus<T: Real>() -> StateVector<T> {
    let h = T::lit(0.5f64.sqrt()).cplx();
    StateVector::new(ComplexVector::from_vec(vec![h, h])).expect("nonzero")
}

pub fn minus<T: Real>() -> StateVector<T> {
    let h = T::lit(0.5f64.sqrt()).cplx();
    StateVector::new(ComplexVector::from_vec(vec![h, -h])).expect("nonzero")
}

/// Singlet `(|01⟩ − |10⟩)/√2`.
pub fn singlet<T: Real>() -> StateVector<T> {
    let h = T::lit(0.5f64.sqrt()).cplx();
    let z = T::zero().cplx();
    StateVector::new(ComplexVector::from_vec(vec![z, h, -h, z])).expect("nonzero")
}

/// `(|00⟩ + |11⟩)/√2`.
pub fn phi_plus<T: Real>() -> StateVector<T> {
    let h = T::lit(0.5f64.sqrt()).cplx();
    let z = T::zero().cplx();
    StateVector::new(ComplexVector::from_vec(vec![h, z, z, h])).expect("nonzero")
}

/// Controlled-NOT with the first factor as control.
pub fn cnot<T: Real>() -> ComplexMatrix<T> {
    crate::hilbert::real_matrix(
        4,
        &[
            1., 0., 0., 0., //
            0., 1., 0., 0., //
            0., 0., 0., 1., //
            0., 0., 1., 0.,
        ],
    )
}

/// Single-qubit rotation `Rz(α) Ry(β) Rz(γ)`.
pub fn euler_rotation<T: Real>(alpha: f64, beta: f64, gamma: f64) -> ComplexMatrix<T> {
    let rz = |a: f64| {
        m2::<T>([[((-a / 2.).cos(), (-a / 2.).sin()), (0., 0.)], [(0., 0.), ((a / 2.).cos(), (a / 2.).sin())]])
    };
    let (c, s) = ((beta / 2.).cos(), (beta / 2.).sin());
    let ry = m2::<T>([[(c, 0.), (-s, 0.)], [(s, 0.), (c, 0.)]]);
    rz(alpha) * ry * rz(gamma)
}
