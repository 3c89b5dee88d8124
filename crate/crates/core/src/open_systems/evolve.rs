// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::{entropy_of_spectrum, GkslGenerator};
use crate::hilbert::{check_dim, eig_hermitian, hermitize, is_finite, ComplexMatrix, DensityOperator};
use crate::{Error, Real, Result};

/// Negative eigenvalues deeper than this are not clipped but treated as a
/// diverging step.
const CLIP_LIMIT: f64 = 1e-6;

/// Integration settings for [`evolve_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolveOptions {
    pub t_end: f64,
    pub dt: f64,
    /// Eigenvalues below `−positivity_floor` are clipped to zero.
    pub positivity_floor: f64,
    /// Trace drift above this aborts the run.
    pub max_trace_drift: f64,
}

impl EvolveOptions {
    pub fn new(t_end: f64, dt: f64) -> Self {
        Self { t_end, dt, positivity_floor: 1e-8, max_trace_drift: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyRecord<T> {
    pub von_neumann: T,
    pub linear: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T: Real> {
    pub times: Vec<T>,
    pub states: Vec<DensityOperator<T>>,
    pub entropies: Vec<EntropyRecord<T>>,
    /// Steps where a negative eigenvalue had to be clipped.
    pub clip_events: usize,
    /// Largest `|Tr ρ − 1|` seen before any renormalization.
    pub max_trace_drift: T,
    /// Smallest eigenvalue seen after any step, before clipping.
    pub min_eigenvalue: T,
}

impl<T: Real> Trajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &DensityOperator<T> {
        self.states.last().expect("trajectory holds the initial state")
    }

    pub fn von_neumann(&self) -> Vec<T> {
        self.entropies.iter().map(|e| e.von_neumann).collect()
    }
}

/// Fixed-step RK4 from `ρ0` up to `t_end`.
pub fn evolve<T: Real>(
    g: &GkslGenerator<T>,
    rho0: &DensityOperator<T>,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory<T>> {
    evolve_with(g, rho0, &EvolveOptions::new(t_end, dt))
}

fn record<T: Real>(values: &[T], rho: &ComplexMatrix<T>) -> EntropyRecord<T> {
    let purity = (rho * rho).trace().re;
    EntropyRecord { von_neumann: entropy_of_spectrum(values), linear: (T::one() - purity).max(T::zero()) }
}

pub fn evolve_with<T: Real>(
    g: &GkslGenerator<T>,
    rho0: &DensityOperator<T>,
    opts: &EvolveOptions,
) -> Result<Trajectory<T>> {
    check_dim(g.dim(), rho0.dim())?;
    if !(opts.t_end > 0.0 && opts.dt > 0.0 && opts.t_end.is_finite() && opts.dt.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "t_end and dt must be positive (t_end = {}, dt = {})",
            opts.t_end, opts.dt
        )));
    }
    let steps = (opts.t_end / opts.dt - 1e-9).ceil().max(1.0) as usize;
    let time = |k: usize| if k == steps { opts.t_end } else { k as f64 * opts.dt };
    let half = T::lit(0.5).cplx();
    let sixth = T::lit(1.0 / 6.0).cplx();

    let mut rho = rho0.matrix().clone();
    let eig0 = eig_hermitian(&rho)?;
    let mut traj = Trajectory {
        times: vec![T::zero()],
        states: vec![rho0.clone()],
        entropies: vec![record(&eig0.values, &rho)],
        clip_events: 0,
        max_trace_drift: T::zero(),
        min_eigenvalue: eig0.min(),
    };
    let mut trace = T::one();

    for k in 0..steps {
        let h = T::lit(time(k + 1) - time(k)).cplx();
        let k1 = g.apply(&rho);
        let k2 = g.apply(&(&rho + &k1 * (h * half)));
        let k3 = g.apply(&(&rho + &k2 * (h * half)));
        let k4 = g.apply(&(&rho + &k3 * h));
        let next = &rho + (k1 + (k2 + k3) * T::lit(2.0).cplx() + k4) * (h * sixth);
        if !is_finite(&next) {
            return Err(Error::StepInstability { drift: f64::NAN });
        }
        let next = hermitize(&next);
        // drift relative to the last renormalized trace, accumulated
        trace += next.trace().re - rho.trace().re;
        let drift = (trace - T::one()).abs();
        traj.max_trace_drift = traj.max_trace_drift.max(drift);
        if drift > T::lit(opts.max_trace_drift) {
            return Err(Error::StepInstability { drift: drift.as_f64() });
        }
        let eig = eig_hermitian(&next)?;
        traj.min_eigenvalue = traj.min_eigenvalue.min(eig.min());
        if eig.min() < -T::lit(CLIP_LIMIT) {
            return Err(Error::StepInstability { drift: drift.as_f64() });
        }
        let clip = eig.min() < -T::lit(opts.positivity_floor);
        rho = if clip {
            traj.clip_events += 1;
            let clipped = eig.map_spectrum(|l| l.max(T::zero()));
            let tr = clipped.trace().re;
            clipped / tr.cplx()
        } else {
            next
        };
        let values = if clip {
            eig_hermitian(&rho)?.values
        } else {
            eig.values
        };
        traj.times.push(T::lit(time(k + 1)));
        traj.entropies.push(record(&values, &rho));
        traj.states.push(DensityOperator::from_hermitian_unchecked(rho.clone()));
    }
    Ok(traj)
}
