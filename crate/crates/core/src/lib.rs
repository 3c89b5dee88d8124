// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! Finite-dimensional quantum-like modeling toolkit.
//!
//! The crate covers six areas, each in its own module:
//!
//! * [`hilbert`]: states, density operators, observables, tensor products,
//!   partial traces and the Hermitian eigensolver everything else sits on.
//! * [`logic`]: the projector lattice (complement, meet, join) and
//!   distributivity checks, both global and relative to a state.
//! * [`instruments`]: quantum instruments in Kraus form, Born probabilities,
//!   state updates, POVMs, indirect (dilation) measurement schemes and
//!   sequential joint distributions.
//! * [`effects`]: question-order, response-replicability and QQ-equality
//!   diagnostics over pairs of instruments.
//! * [`open_systems`]: GKSL dynamics, entropies, hump detection, stationary
//!   states, decision via decoherence and compound-system order stability.
//! * [`contextuality`]: CHSH correlations, the three-slit Sorkin residual and
//!   context conditioning on bipartite states.
//!
//! All numerical code is generic over the real scalar type through [`Real`].
//! Tolerances default to values tuned for `f64`; `f32` users should pass a
//! looser [`Tolerances`] where an operation accepts one. Concrete `f64`
//! aliases are exported at the crate root.

pub mod contextuality;
pub mod effects;
mod error;
pub mod hilbert;
pub mod instruments;
pub mod literal;
pub mod logic;
pub mod open_systems;
pub mod ops;
pub mod random;
mod scalar;
mod tolerance;

pub use error::{DensityViolation, Error, Result};
pub use scalar::Real;
pub use tolerance::Tolerances;

pub use nalgebra::Complex;

pub type ComplexMatrix64 = hilbert::ComplexMatrix<f64>;
pub type StateVector64 = hilbert::StateVector<f64>;
pub type Density64 = hilbert::DensityOperator<f64>;
pub type Observable64 = hilbert::HermitianObservable<f64>;
pub type Projector64 = hilbert::Projector<f64>;
pub type Instrument64 = instruments::QuantumInstrument<f64>;
pub type Superoperator64 = instruments::Superoperator<f64>;
pub type Effect64 = instruments::Effect<f64>;
pub type Generator64 = open_systems::GkslGenerator<f64>;
pub type Trajectory64 = open_systems::Trajectory<f64>;
pub type Dichotomic64 = contextuality::DichotomicObservable<f64>;
pub type Slits64 = contextuality::SlitConfiguration<f64>;

pub type ComplexMatrix32 = hilbert::ComplexMatrix<f32>;
pub type Density32 = hilbert::DensityOperator<f32>;
pub type Projector32 = hilbert::Projector<f32>;
