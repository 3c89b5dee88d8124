// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! CHSH correlations, the three-slit Sorkin residual and conditioning of a
//! bipartite experience ⊗ emotion state on an emotion outcome.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::hilbert::{
    check_dim, check_square, eig_hermitian, hermiticity_deviation, identity, max_abs,
    ComplexMatrix, DensityOperator, Projector, StateVector, Subsystem,
};
use crate::instruments::{Effect, QuantumInstrument};
use crate::{Error, Real, Result};

const DICHOTOMIC_TOL: f64 = 1e-9;
const ORTHOGONALITY_TOL: f64 = 1e-10;
/// Slack on the Tsirelson post-check.
const TSIRELSON_SLACK: f64 = 1e-9;

pub const CLASSICAL_BOUND: f64 = 2.0;
pub const TSIRELSON_BOUND: f64 = 2.8284271247;

/// Hermitian observable with spectrum in {−1, +1}.
#[derive(Debug, Clone, PartialEq)]
pub struct DichotomicObservable<T: Real> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> DichotomicObservable<T> {
    pub fn new(m: ComplexMatrix<T>) -> Result<Self> {
        let d = check_square(&m)?;
        let dev = hermiticity_deviation(&m);
        if dev > T::lit(DICHOTOMIC_TOL) {
            return Err(Error::NotDichotomic(format!("not Hermitian (deviation {:e})", dev.as_f64())));
        }
        let sq = max_abs(&(&m * &m - identity::<T>(d)));
        if sq > T::lit(DICHOTOMIC_TOL) {
            return Err(Error::NotDichotomic(format!("M² differs from I by {:e}", sq.as_f64())));
        }
        Ok(Self { matrix: m })
    }

    /// `cos θ σz + sin θ σx`.
    pub fn spin(theta: f64) -> Self {
        Self { matrix: crate::ops::spin_along(theta) }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Projector onto the `+1` (`sign = true`) or `−1` eigenspace.
    fn outcome_projector(&self, sign: bool) -> ComplexMatrix<T> {
        let id = identity::<T>(self.dim());
        let s = if sign { T::one() } else { -T::one() };
        (id + &self.matrix * s.cplx()) * T::lit(0.5).cplx()
    }
}

/// `E = Tr[(A⊗B)ρ]`.
pub fn correlation<T: Real>(
    rho: &DensityOperator<T>,
    a: &DichotomicObservable<T>,
    b: &DichotomicObservable<T>,
    dims: (usize, usize),
) -> Result<T> {
    check_dim(dims.0, a.dim())?;
    check_dim(dims.1, b.dim())?;
    check_dim(dims.0 * dims.1, rho.dim())?;
    let e = rho.expectation(&a.matrix.kronecker(&b.matrix));
    Ok(e.min(T::one()).max(-T::one()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChshReport {
    #[serde(rename = "E11")]
    pub e11: f64,
    #[serde(rename = "E12")]
    pub e12: f64,
    #[serde(rename = "E21")]
    pub e21: f64,
    #[serde(rename = "E22")]
    pub e22: f64,
    #[serde(rename = "S")]
    pub s: f64,
    pub bound_classical: f64,
    pub bound_tsirelson: f64,
}

impl ChshReport {
    fn from_correlations(e: [f64; 4]) -> Self {
        Self {
            e11: e[0],
            e12: e[1],
            e21: e[2],
            e22: e[3],
            s: (e[0] + e[1] + e[2] - e[3]).abs(),
            bound_classical: CLASSICAL_BOUND,
            bound_tsirelson: TSIRELSON_BOUND,
        }
    }
}

/// Measurement settings `[A1, A2, B1, B2]`.
pub type ChshSettings<'a, T> = [&'a DichotomicObservable<T>; 4];

/// `S = |E(A1,B1) + E(A1,B2) + E(A2,B1) − E(A2,B2)|` from exact correlations.
pub fn chsh<T: Real>(
    rho: &DensityOperator<T>,
    settings: ChshSettings<'_, T>,
    dims: (usize, usize),
) -> Result<ChshReport> {
    let [a1, a2, b1, b2] = settings;
    let mut e = [0.0; 4];
    for (slot, (a, b)) in [(a1, b1), (a1, b2), (a2, b1), (a2, b2)].into_iter().enumerate() {
        e[slot] = correlation(rho, a, b, dims)?.as_f64();
    }
    let report = ChshReport::from_correlations(e);
    if report.s > 2.0 * 2f64.sqrt() + TSIRELSON_SLACK {
        return Err(Error::TsirelsonExceeded { value: report.s });
    }
    Ok(report)
}

/// CHSH from `trials` simulated joint measurements per setting pair.
/// Sampled values can exceed either bound by statistical fluctuation, so no
/// bound is enforced.
pub fn chsh_sampled<T: Real, R: Rng + ?Sized>(
    rho: &DensityOperator<T>,
    settings: ChshSettings<'_, T>,
    dims: (usize, usize),
    trials: usize,
    rng: &mut R,
) -> Result<ChshReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    let [a1, a2, b1, b2] = settings;
    let mut e = [0.0; 4];
    for (slot, (a, b)) in [(a1, b1), (a1, b2), (a2, b1), (a2, b2)].into_iter().enumerate() {
        check_dim(dims.0, a.dim())?;
        check_dim(dims.1, b.dim())?;
        check_dim(dims.0 * dims.1, rho.dim())?;
        let mut cells = Vec::with_capacity(4);
        for sa in [true, false] {
            for sb in [true, false] {
                let p = rho
                    .expectation(&a.outcome_projector(sa).kronecker(&b.outcome_projector(sb)))
                    .as_f64()
                    .max(0.0);
                cells.push((if sa == sb { 1.0 } else { -1.0 }, p));
            }
        }
        let total: f64 = cells.iter().map(|c| c.1).sum();
        let mut sum = 0.0;
        for _ in 0..trials {
            let mut u = rng.random::<f64>() * total;
            let mut sign = cells[3].0;
            for &(s, p) in &cells {
                if u < p {
                    sign = s;
                    break;
                }
                u -= p;
            }
            sum += sign;
        }
        e[slot] = sum / trials as f64;
    }
    Ok(ChshReport::from_correlations(e))
}

/// Mutually orthogonal slits, a detector effect and a pure source.
#[derive(Debug, Clone, PartialEq)]
pub struct SlitConfiguration<T: Real> {
    slits: Vec<Projector<T>>,
    detector: Effect<T>,
    source: StateVector<T>,
}

impl<T: Real> SlitConfiguration<T> {
    pub fn new(slits: Vec<Projector<T>>, detector: Effect<T>, source: StateVector<T>) -> Result<Self> {
        let d = source.dim();
        check_dim(d, detector.dim())?;
        for s in &slits {
            check_dim(d, s.dim())?;
        }
        for i in 0..slits.len() {
            for j in i + 1..slits.len() {
                if max_abs(&(slits[i].matrix() * slits[j].matrix())) > T::lit(ORTHOGONALITY_TOL) {
                    return Err(Error::SlitsNotOrthogonal(i, j));
                }
            }
        }
        Ok(Self { slits, detector, source })
    }

    pub fn slits(&self) -> &[Projector<T>] {
        &self.slits
    }

    pub fn detector(&self) -> &Effect<T> {
        &self.detector
    }

    pub fn source(&self) -> &StateVector<T> {
        &self.source
    }

    /// `p_S = ⟨ψ|P_S D P_S|ψ⟩` for the open slits `subset`.
    pub fn subset_probability(&self, subset: &[usize]) -> T {
        let d = self.source.dim();
        let p = subset
            .iter()
            .fold(ComplexMatrix::<T>::zeros(d, d), |acc, &i| acc + self.slits[i].matrix());
        let v = &p * self.source.amplitudes();
        (v.adjoint() * self.detector.matrix() * &v)[(0, 0)].re
    }
}

/// Three single-level slits in ℂ³ with source and detector both the uniform
/// superposition. Each pair of slits interferes with `p_ij − p_i − p_j = 2/9`.
pub fn symmetric_three_slit<T: Real>() -> SlitConfiguration<T> {
    let s = T::lit(1.0 / 3f64.sqrt()).cplx();
    let source = StateVector::new(crate::hilbert::ComplexVector::from_element(3, s))
        .expect("nonzero vector");
    let detector = Effect::new(source.density().into_matrix()).expect("rank-one projector");
    let slits = (0..3).map(|i| Projector::coordinate(3, &[i])).collect();
    SlitConfiguration::new(slits, detector, source).expect("coordinate slits are orthogonal")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SorkinReport<T> {
    /// `(open slits, p_S)` for every nonempty subset.
    pub subset_probabilities: Vec<(Vec<usize>, T)>,
    /// `p_ij − p_i − p_j` for each pair.
    pub pair_interference: Vec<((usize, usize), T)>,
    /// Third-order residual `I₃`.
    pub residual: T,
}

pub fn sorkin_residual<T: Real>(cfg: &SlitConfiguration<T>) -> Result<SorkinReport<T>> {
    if cfg.slits.len() != 3 {
        return Err(Error::SlitCount(cfg.slits.len()));
    }
    let subsets: Vec<Vec<usize>> = (1u8..8)
        .map(|mask| (0..3).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    let probs: Vec<(Vec<usize>, T)> =
        subsets.into_iter().map(|s| { let p = cfg.subset_probability(&s); (s, p) }).collect();
    let p = |s: &[usize]| probs.iter().find(|(k, _)| k == s).map(|(_, p)| *p).unwrap_or(T::zero());
    let residual = p(&[0, 1, 2]) - p(&[0, 1]) - p(&[0, 2]) - p(&[1, 2]) + p(&[0]) + p(&[1]) + p(&[2]);
    let pair_interference = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .map(|(i, j)| ((i, j), p(&[i, j]) - p(&[i]) - p(&[j])))
        .collect();
    Ok(SorkinReport { subset_probabilities: probs, pair_interference, residual })
}

/// Updates `ρ` on experience ⊗ emotion by an emotion outcome and returns the
/// conditioned experience state.
pub fn contextual_conditioning<T: Real>(
    rho: &DensityOperator<T>,
    emotion: &QuantumInstrument<T>,
    outcome: &str,
    dims: (usize, usize),
) -> Result<DensityOperator<T>> {
    check_dim(dims.1, emotion.dim())?;
    check_dim(dims.0 * dims.1, rho.dim())?;
    let post = emotion.extend_left(dims.0).update(outcome, rho)?;
    post.reduce(dims, Subsystem::A)
}

/// Spectrum of the conditioned experience state, for comparing degeneracy
/// before and after coloring.
pub fn conditioned_spectrum<T: Real>(state: &DensityOperator<T>) -> Result<Vec<T>> {
    Ok(eig_hermitian(state.matrix())?.values)
}
