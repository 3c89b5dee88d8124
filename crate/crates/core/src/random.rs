// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! Random states, operators and unitaries for property sweeps.
//!
//! Everything draws from a caller-supplied RNG so sweeps are reproducible
//! from a seed; [`seeded`] builds the ChaCha generator used across the crate.

use nalgebra::{Complex, ComplexField};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::hilbert::{
    hermitize, identity, ComplexMatrix, ComplexVector, DensityOperator, Projector, StateVector,
};
use crate::Real;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re), T::lit(im))
}

pub fn ginibre<T: Real, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-random pure state.
pub fn state<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> StateVector<T> {
    loop {
        let v = ComplexVector::from_fn(dim, |_, _| gaussian(rng));
        if let Ok(s) = StateVector::new(v) {
            return s;
        }
    }
}

/// Full-rank random density `G G† / Tr`.
pub fn density<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityOperator<T> {
    let g = ginibre::<T, _>(rng, dim, dim);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityOperator::from_hermitian_unchecked(m.unscale(tr))
}

pub fn hermitian<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix<T> {
    hermitize(&ginibre(rng, dim, dim))
}

/// Haar-random unitary via QR with phase correction.
pub fn unitary<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix<T> {
    let qr = ginibre::<T, _>(rng, dim, dim).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..dim {
        let d = r[(j, j)];
        let m = d.modulus();
        if m > T::zero() {
            let phase = d.unscale(m);
            let mut col = q.column_mut(j);
            col *= phase;
        }
    }
    q
}

/// Random projector of the given rank.
pub fn projector<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize, rank: usize) -> Projector<T> {
    let u = unitary::<T, _>(rng, dim);
    let cols = (0..rank).map(|i| u.column(i).into_owned());
    Projector::from_matrix_unchecked(crate::hilbert::projector_from_columns(dim, cols))
}

/// Random projector of uniformly drawn rank in `1..dim`.
pub fn proper_projector<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Projector<T> {
    let rank = if dim > 1 { rng.random_range(1..dim) } else { 1 };
    projector(rng, dim, rank)
}

/// Random effect `0 ≤ E ≤ I`: a random positive operator scaled by its top eigenvalue
/// and a uniform factor.
pub fn effect_matrix<T: Real, R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix<T> {
    let g = ginibre::<T, _>(rng, dim, dim);
    let m = hermitize(&(&g * g.adjoint()));
    let top = crate::hilbert::eig_hermitian(&m).map(|e| e.max()).unwrap_or(T::one());
    let s: f64 = rng.random_range(0.2..1.0);
    m * (T::lit(s) / top).cplx()
}

/// Partition of `0..dim` into `parts` nonempty groups of a random basis,
/// returned as mutually orthogonal projectors summing to the identity.
pub fn resolution<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    parts: usize,
) -> Vec<Projector<T>> {
    assert!(parts >= 1 && parts <= dim);
    let u = unitary::<T, _>(rng, dim);
    let mut owner: Vec<usize> = (0..dim).map(|i| if i < parts { i } else { rng.random_range(0..parts) }).collect();
    // shuffle ownership
    for i in (1..dim).rev() {
        let j = rng.random_range(0..=i);
        owner.swap(i, j);
    }
    (0..parts)
        .map(|p| {
            let cols = (0..dim).filter(|&i| owner[i] == p).map(|i| u.column(i).into_owned());
            Projector::from_matrix_unchecked(crate::hilbert::projector_from_columns(dim, cols))
        })
        .collect()
}

/// Pairwise-commuting projectors: shared random basis, random 0/1 diagonal patterns.
pub fn commuting_projectors<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    count: usize,
) -> Vec<Projector<T>> {
    let u = unitary::<T, _>(rng, dim);
    (0..count)
        .map(|_| {
            let cols = (0..dim)
                .filter(|_| rng.random_bool(0.5))
                .map(|i| u.column(i).into_owned())
                .collect::<Vec<_>>();
            Projector::from_matrix_unchecked(crate::hilbert::projector_from_columns(dim, cols))
        })
        .collect()
}

/// Projector pair and pure state for comparing replicability with
/// state-relative distributivity.
///
/// In a shared random basis, `P` and `Q` are coordinate projectors on a
/// commuting block, plus (when `dim ≥ 2`, half the time) rank-one
/// projectors onto two generic vectors of a trailing 2-dimensional block.
/// Half the time `ψ` lies in the commuting block.
pub fn bridge_case<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
) -> (Projector<T>, Projector<T>, StateVector<T>) {
    let u = unitary::<T, _>(rng, dim);
    let generic = if dim >= 2 && rng.random_bool(0.5) { 2 } else { 0 };
    let block = dim - generic;
    let col = |i: usize| u.column(i).into_owned();
    let mut p_cols: Vec<ComplexVector<T>> = Vec::new();
    let mut q_cols: Vec<ComplexVector<T>> = Vec::new();
    for i in 0..block {
        if rng.random_bool(0.5) {
            p_cols.push(col(i));
        }
        if rng.random_bool(0.5) {
            q_cols.push(col(i));
        }
    }
    if generic == 2 {
        let (c1, c2) = (col(block), col(block + 1));
        let a = T::lit(rng.random_range(0.2..1.4));
        let b = T::lit(rng.random_range(0.2..1.4));
        let angle: f64 = rng.random_range(0.0..6.2);
        let phase = Complex::new(T::lit(angle.cos()), T::lit(angle.sin()));
        p_cols.push(&c1 * a.cos().cplx() + &c2 * a.sin().cplx());
        q_cols.push(&c1 * b.cos().cplx() + &c2 * (phase * b.sin().cplx()));
    }
    let p = Projector::from_matrix_unchecked(crate::hilbert::projector_from_columns(dim, p_cols));
    let q = Projector::from_matrix_unchecked(crate::hilbert::projector_from_columns(dim, q_cols));
    let psi = if block > 0 && rng.random_bool(0.5) {
        let coeffs = state::<T, _>(rng, block);
        let v = (0..block).fold(ComplexVector::zeros(dim), |acc, i| acc + col(i) * coeffs.amplitudes()[i]);
        StateVector::new(v).expect("unit combination of orthonormal columns")
    } else {
        state(rng, dim)
    };
    (p, q, psi)
}

pub fn is_unitary<T: Real>(u: &ComplexMatrix<T>, tol: f64) -> bool {
    crate::hilbert::max_abs(&(u.adjoint() * u - identity::<T>(u.nrows()))) <= T::lit(tol)
}
