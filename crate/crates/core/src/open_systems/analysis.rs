// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{ComplexField, SVD};
use serde::{Deserialize, Serialize};

use super::{evolve, von_neumann_entropy, GkslGenerator, Trajectory};
use crate::hilbert::{
    check_dim, hermitize, max_abs, validate_density_with, ComplexMatrix, DensityOperator,
    HermitianObservable, Subsystem,
};
use crate::{Error, Real, Result, Tolerances};

pub const HUMP_WINDOW: usize = 5;
pub const HUMP_NOISE_FLOOR: f64 = 1e-6;
pub const DECOHERENCE_THRESHOLD: f64 = 1e-6;

/// One local maximum of the von Neumann entropy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak<T> {
    pub index: usize,
    pub time: T,
    pub height: T,
    /// Start of the rising phase (preceding minimum or trajectory start).
    pub rise_start: T,
    /// End of the falling phase (following minimum or trajectory end).
    pub fall_end: T,
    pub rise: T,
    pub fall: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HumpReport<T> {
    pub hump_count: usize,
    pub peaks: Vec<Peak<T>>,
    pub camel_shaped: bool,
}

pub fn hump_profile<T: Real>(traj: &Trajectory<T>) -> Result<HumpReport<T>> {
    hump_profile_with(traj, HUMP_WINDOW, HUMP_NOISE_FLOOR)
}

/// Centered moving average; the window shrinks at the ends.
fn smooth<T: Real>(xs: &[T], window: usize) -> Vec<T> {
    let half = window / 2;
    (0..xs.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half).min(xs.len() - 1);
            let sum = xs[lo..=hi].iter().fold(T::zero(), |a, &x| a + x);
            sum / T::lit((hi - lo + 1) as f64)
        })
        .collect()
}

/// Detects entropy humps after smoothing. Peaks are located on the smoothed
/// series; heights, times and phase amplitudes are read from the raw one.
pub fn hump_profile_with<T: Real>(
    traj: &Trajectory<T>,
    window: usize,
    noise_floor: f64,
) -> Result<HumpReport<T>> {
    let raw = traj.von_neumann();
    let n = raw.len();
    if n < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 time points, found {n}")));
    }
    let s = smooth(&raw, window.max(1));
    let floor = T::lit(noise_floor);
    let mut peaks = Vec::new();
    let mut i = 1;
    while i + 1 < n {
        if s[i] > s[i - 1] {
            // walk over a plateau
            let mut j = i;
            while j + 1 < n && s[j + 1] == s[i] {
                j += 1;
            }
            if j + 1 < n && s[j + 1] < s[i] {
                let mut lo = i;
                while lo > 0 && s[lo - 1] <= s[lo] {
                    lo -= 1;
                }
                let mut hi = j;
                while hi + 1 < n && s[hi + 1] <= s[hi] {
                    hi += 1;
                }
                let rise = s[i] - s[lo];
                let fall = s[i] - s[hi];
                if rise > floor && fall > floor {
                    let half = window / 2;
                    let a = i.saturating_sub(half);
                    let b = (j + half).min(n - 1);
                    let top = (a..=b)
                        .max_by(|&x, &y| raw[x].partial_cmp(&raw[y]).unwrap_or(std::cmp::Ordering::Equal))
                        .unwrap_or(i);
                    peaks.push(Peak {
                        index: top,
                        time: traj.times[top],
                        height: raw[top],
                        rise_start: traj.times[lo],
                        fall_end: traj.times[hi],
                        rise: raw[top] - raw[lo],
                        fall: raw[top] - raw[hi],
                    });
                }
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    Ok(HumpReport { hump_count: peaks.len(), camel_shaped: !peaks.is_empty(), peaks })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryState<T: Real> {
    pub state: DensityOperator<T>,
    /// False when the generator has more than one stationary direction; the
    /// state is then the projection of `I/d` onto the stationary subspace.
    pub unique: bool,
    pub kernel_dim: usize,
    /// `‖gksl_rhs(ρ∞)‖∞`.
    pub residual: T,
}

fn reshape<T: Real>(v: &nalgebra::DVector<nalgebra::Complex<T>>, d: usize) -> ComplexMatrix<T> {
    ComplexMatrix::from_column_slice(d, d, v.as_slice())
}

/// Stationary density from the null space of the vectorized generator.
pub fn stationary_state<T: Real>(g: &GkslGenerator<T>, tol: f64) -> Result<StationaryState<T>> {
    let d = g.dim();
    let l = g.to_matrix();
    let svd = SVD::new(l, false, true);
    let v_t = svd.v_t.as_ref().expect("requested right singular vectors");
    let smax = svd.singular_values.iter().fold(T::zero(), |a, &s| a.max(s));
    let cut = T::lit(1e-8) * smax.max(T::one());
    let kernel: Vec<_> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= cut)
        .map(|i| v_t.row(i).adjoint())
        .collect();
    if kernel.is_empty() {
        return Err(Error::NoStationaryState { residual: f64::NAN });
    }
    let candidate = if kernel.len() == 1 {
        reshape(&kernel[0], d)
    } else {
        let mixed = crate::hilbert::identity::<T>(d) / T::lit(d as f64).cplx();
        let flat = nalgebra::DVector::from_column_slice(mixed.as_slice());
        let proj = kernel.iter().fold(nalgebra::DVector::zeros(d * d), |acc, v| {
            acc + v * v.dotc(&flat)
        });
        reshape(&proj, d)
    };
    let tr = candidate.trace();
    if tr.modulus() <= T::lit(1e-12) {
        return Err(Error::NoStationaryState { residual: f64::NAN });
    }
    let m = hermitize(&(candidate / tr));
    let residual = max_abs(&g.apply(&m));
    let loose = Tolerances { psd_floor: 1e-8, hermiticity: 1e-8, trace: 1e-8, ..Tolerances::default() };
    let state = match validate_density_with(&m, &loose) {
        Ok(s) => s,
        Err(_) => return Err(Error::NoStationaryState { residual: residual.as_f64() }),
    };
    if residual > T::lit(tol) {
        return Err(Error::NoStationaryState { residual: residual.as_f64() });
    }
    Ok(StationaryState { state, unique: kernel.len() == 1, kernel_dim: kernel.len(), residual })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionOutcome<T> {
    pub value: T,
    pub probability: T,
}

pub fn decision_distribution<T: Real>(
    rho: &DensityOperator<T>,
    basis: &HermitianObservable<T>,
) -> Result<Vec<DecisionOutcome<T>>> {
    decision_distribution_with(rho, basis, DECOHERENCE_THRESHOLD)
}

/// Eigenvalue → probability table of a state decohered in `basis`'s
/// eigenbasis. Off-diagonal mass is the Frobenius norm of `ρ − Σ PₓρPₓ`.
pub fn decision_distribution_with<T: Real>(
    rho: &DensityOperator<T>,
    basis: &HermitianObservable<T>,
    threshold: f64,
) -> Result<Vec<DecisionOutcome<T>>> {
    check_dim(basis.dim(), rho.dim())?;
    let m = rho.matrix();
    let mut pinched = ComplexMatrix::zeros(m.nrows(), m.ncols());
    let mut table = Vec::new();
    for c in basis.spectral() {
        let p = c.projector.matrix();
        pinched += p * m * p;
        table.push(DecisionOutcome { value: c.value, probability: (p * m).trace().re.max(T::zero()) });
    }
    let off = (m - pinched).norm();
    if off > T::lit(threshold) {
        return Err(Error::NotDecohered { off_diagonal: off.as_f64() });
    }
    let total = table.iter().fold(T::zero(), |a, o| a + o.probability);
    for o in &mut table {
        o.probability /= total;
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderStabilityReport<T> {
    pub times: Vec<T>,
    pub global: Vec<T>,
    pub subsystem_a: Vec<T>,
    pub subsystem_b: Vec<T>,
    pub global_increase: T,
    pub max_subsystem_increase: T,
    pub order_stable: bool,
}

pub const GLOBAL_INCREASE_LIMIT: f64 = 1e-6;
pub const SUBSYSTEM_INCREASE_MIN: f64 = 0.1;

fn increase<T: Real>(xs: &[T]) -> T {
    xs.iter().fold(T::zero(), |a, &x| a.max(x - xs[0]))
}

/// Global and subsystem entropy series of a bipartite evolution.
pub fn order_stability_report<T: Real>(
    g: &GkslGenerator<T>,
    rho0: &DensityOperator<T>,
    dims: (usize, usize),
    t_end: f64,
    dt: f64,
) -> Result<OrderStabilityReport<T>> {
    check_dim(dims.0 * dims.1, rho0.dim())?;
    let traj = evolve(g, rho0, t_end, dt)?;
    let mut a = Vec::with_capacity(traj.len());
    let mut b = Vec::with_capacity(traj.len());
    for s in &traj.states {
        a.push(von_neumann_entropy(&s.reduce(dims, Subsystem::A)?));
        b.push(von_neumann_entropy(&s.reduce(dims, Subsystem::B)?));
    }
    let global = traj.von_neumann();
    let global_increase = increase(&global);
    let max_subsystem_increase = increase(&a).max(increase(&b));
    Ok(OrderStabilityReport {
        order_stable: global_increase <= T::lit(GLOBAL_INCREASE_LIMIT)
            && max_subsystem_increase >= T::lit(SUBSYSTEM_INCREASE_MIN),
        times: traj.times,
        global,
        subsystem_a: a,
        subsystem_b: b,
        global_increase,
        max_subsystem_increase,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{diag, StateVector};
    use crate::{ops, random};
    use nalgebra::Complex;

    fn damping(gamma: f64) -> GkslGenerator<f64> {
        GkslGenerator::new(
            crate::hilbert::zeros(2),
            vec![ops::sigma_minus::<f64>() * Complex::new(gamma.sqrt(), 0.0)],
        )
        .unwrap()
    }

    fn dephasing(gamma: f64) -> GkslGenerator<f64> {
        GkslGenerator::new(
            crate::hilbert::zeros(2),
            vec![ops::pauli_z::<f64>() * Complex::new((gamma / 2.0).sqrt(), 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn constant_trajectory_has_no_humps() {
        let g = GkslGenerator::new(crate::hilbert::zeros(2), vec![]).unwrap();
        let t = evolve(&g, &ops::plus::<f64>().density(), 1.0, 0.1).unwrap();
        let r = hump_profile(&t).unwrap();
        assert_eq!(r.hump_count, 0);
        assert!(!r.camel_shaped);
    }

    #[test]
    fn damping_hump_peaks_at_half_population() {
        let gamma = 1.3;
        let dt = 1e-3;
        let t = evolve(&damping(gamma), &StateVector::basis(2, 1).density(), 4.0 / gamma, dt).unwrap();
        let r = hump_profile(&t).unwrap();
        assert_eq!(r.hump_count, 1);
        assert!(r.camel_shaped);
        let p = r.peaks[0];
        assert!((p.height - 2f64.ln()).abs() < 1e-4);
        assert!((p.time - 2f64.ln() / gamma).abs() <= 2.0 * dt);
        assert!(p.rise > 0.6 && p.fall > 0.3);
    }

    #[test]
    fn dephasing_is_monotone() {
        let t = evolve(&dephasing(1.0), &ops::plus::<f64>().density(), 10.0, 0.01).unwrap();
        assert_eq!(hump_profile(&t).unwrap().hump_count, 0);
        assert!((t.entropies.last().unwrap().von_neumann - 2f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn short_trajectory_rejected() {
        let t = evolve(&damping(1.0), &ops::plus::<f64>().density(), 0.1, 0.1).unwrap();
        assert!(hump_profile(&t).is_err());
    }

    #[test]
    fn damping_stationary_is_ground_state() {
        let s = stationary_state(&damping(0.8), 1e-10).unwrap();
        assert!(s.unique);
        assert!(max_abs(&(s.state.matrix() - diag(&[1.0, 0.0]))) < 1e-10);
    }

    #[test]
    fn free_generator_is_not_unique() {
        let g = GkslGenerator::new(crate::hilbert::zeros(3), vec![]).unwrap();
        let s = stationary_state(&g, 1e-10).unwrap();
        assert!(!s.unique);
        assert_eq!(s.kernel_dim, 9);
        assert!(max_abs(&(s.state.matrix() - DensityOperator::<f64>::maximally_mixed(3).matrix())) < 1e-10);
    }

    #[test]
    fn dephasing_limit_is_diagonal_of_initial() {
        let mut rng = random::seeded(4);
        let rho0 = random::density::<f64, _>(&mut rng, 2);
        let t = evolve(&dephasing(2.0), &rho0, 12.0, 0.01).unwrap();
        let end = t.final_state().matrix();
        let oracle = diag(&[rho0.matrix()[(0, 0)].re, rho0.matrix()[(1, 1)].re]);
        assert!(max_abs(&(end - &oracle)) < 1e-9);
        let s = stationary_state(&dephasing(2.0), 1e-10).unwrap();
        assert!(!s.unique);
    }

    #[test]
    fn stationary_matches_long_evolution() {
        let mut rng = random::seeded(21);
        let h = random::hermitian::<f64, _>(&mut rng, 3) * Complex::new(0.3, 0.0);
        let jumps = (0..2).map(|_| random::ginibre::<f64, _>(&mut rng, 3, 3) * Complex::new(0.6, 0.0)).collect();
        let g = GkslGenerator::new(h, jumps).unwrap();
        let s = stationary_state(&g, 1e-10).unwrap();
        assert!(s.unique);
        let t = evolve(&g, &DensityOperator::maximally_mixed(3), 60.0, 0.01).unwrap();
        assert!(max_abs(&(t.final_state().matrix() - s.state.matrix())) <= 1e-6);
    }

    #[test]
    fn decision_tables() {
        let z = HermitianObservable::new(ops::pauli_z::<f64>()).unwrap();
        let rho = DensityOperator::from_diagonal(&[0.7, 0.3]).unwrap();
        let t = decision_distribution(&rho, &z).unwrap();
        assert_eq!(t.len(), 2);
        let plus = t.iter().find(|o| o.value > 0.0).unwrap();
        assert!((plus.probability - 0.7).abs() < 1e-12);
        let pure = decision_distribution(&StateVector::basis(2, 0).density(), &z).unwrap();
        assert!((pure.iter().find(|o| o.value > 0.0).unwrap().probability - 1.0).abs() < 1e-12);
        assert!(matches!(
            decision_distribution(&ops::plus::<f64>().density(), &z),
            Err(Error::NotDecohered { .. })
        ));
        let t = evolve(&dephasing(1.0), &ops::plus::<f64>().density(), 20.0, 0.01).unwrap();
        let d = decision_distribution(t.final_state(), &z).unwrap();
        assert!(d.iter().all(|o| (o.probability - 0.5).abs() < 1e-9));
    }

    fn pair(a: ComplexMatrix<f64>, b: ComplexMatrix<f64>) -> ComplexMatrix<f64> {
        a.kronecker(&b)
    }

    #[test]
    fn local_unitary_is_not_order_stable() {
        let h = pair(ops::pauli_x(), crate::hilbert::identity(2));
        let g = GkslGenerator::unitary(h).unwrap();
        let rho0 = StateVector::basis(4, 0).density();
        let r = order_stability_report(&g, &rho0, (2, 2), 3.0, 0.01).unwrap();
        assert!(r.global_increase <= 1e-8);
        assert!(r.max_subsystem_increase <= 1e-8);
        assert!(!r.order_stable);
    }

    #[test]
    fn entangling_unitary_is_order_stable() {
        let g = GkslGenerator::unitary(pair(ops::pauli_x(), ops::pauli_x())).unwrap();
        let rho0 = StateVector::basis(4, 0).density();
        let r = order_stability_report(&g, &rho0, (2, 2), 1.0, 1e-3).unwrap();
        assert!(r.global.iter().all(|&s| s <= 1e-8));
        // reduced state diag(cos² t, sin² t); entropy reaches ln 2 at t = π/4
        let k = r.times.iter().position(|&t| (t - std::f64::consts::FRAC_PI_4).abs() < 5e-4).unwrap();
        assert!((r.subsystem_a[k] - 2f64.ln()).abs() < 1e-5);
        assert!(r.order_stable);
    }

    #[test]
    fn local_depolarizing_is_not_order_stable() {
        let s = Complex::new(0.5f64.sqrt() * 0.5, 0.0);
        let id = crate::hilbert::identity::<f64>(2);
        let mut jumps = Vec::new();
        for p in [ops::pauli_x::<f64>(), ops::pauli_y(), ops::pauli_z()] {
            jumps.push(pair(p.clone(), id.clone()) * s);
            jumps.push(pair(id.clone(), p) * s);
        }
        let g = GkslGenerator::new(crate::hilbert::zeros(4), jumps).unwrap();
        let rho0 = DensityOperator::from_diagonal(&[0.9, 0.1]).unwrap();
        let rho0 = rho0.tensor(&DensityOperator::from_diagonal(&[0.8, 0.2]).unwrap()).unwrap();
        let r = order_stability_report(&g, &rho0, (2, 2), 3.0, 0.01).unwrap();
        assert!(r.global_increase > 0.1);
        assert!(r.max_subsystem_increase > 0.1);
        assert!(!r.order_stable);
    }

    #[test]
    fn order_stability_dimension_check() {
        let g = damping(1.0);
        assert!(order_stability_report(&g, &ops::plus::<f64>().density(), (2, 2), 1.0, 0.1).is_err());
    }
}
