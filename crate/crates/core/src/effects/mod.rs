// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! Sequential-measurement effect diagnostics for a pair of instruments.
//!
//! * question order effect: `p_AB(x, y) ≠ p_BA(y, x)`;
//! * response replicability: A−A, A−B−A and B−A−B repetition with certainty;
//! * QQ-equality residual `p(AyBn) + p(AnBy) − p(ByAn) − p(BnAy)`.

mod harness;

pub use harness::{
    memory_register_pair, reference_params, search_reference, SYSTEM_DIM, MemoryRegisterParams, RegisterScenario,
};

use serde::{Deserialize, Serialize};

use crate::hilbert::DensityOperator;
use crate::instruments::{sequential_distribution, QuantumInstrument};
use crate::{Error, Real, Result};

/// Events rarer than this are not conditioned on.
pub const EVENT_THRESHOLD: f64 = 1e-9;
/// Allowed shortfall of a conditional repeat probability from 1.
pub const REPEAT_TOLERANCE: f64 = 1e-9;
/// Gap above which the question order effect counts as present.
pub const QOE_THRESHOLD: f64 = 1e-3;
/// Default |q| tolerance for certifying model-generated data.
pub const QQ_TOLERANCE: f64 = 1e-6;

/// `max_{x,y} |p_AB(x, y) − p_BA(y, x)|`.
pub fn qoe_gap<T: Real>(
    a: &QuantumInstrument<T>,
    b: &QuantumInstrument<T>,
    rho: &DensityOperator<T>,
) -> Result<T> {
    let ab = sequential_distribution(&[a, b], rho)?;
    let ba = sequential_distribution(&[b, a], rho)?;
    let mut gap = T::zero();
    for (k, p) in &ab.entries {
        let q = ba.entries.iter().find(|(kk, _)| kk[0] == k[1] && kk[1] == k[0]).map(|(_, q)| *q);
        gap = gap.max((*p - q.unwrap_or(T::zero())).abs());
    }
    Ok(gap)
}

/// Response replicability verdict with the smallest observed conditional
/// repeat probability for each pattern (1 when no event qualified).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RreVerdict<T> {
    pub aa: bool,
    pub aba: bool,
    pub bab: bool,
    pub min_repeat_aa: T,
    pub min_repeat_aba: T,
    pub min_repeat_bab: T,
}

impl<T: Copy> RreVerdict<T> {
    pub fn rre_holds(&self) -> bool {
        self.aa && self.aba && self.bab
    }
}

/// Smallest `p(x, …, x) / p(x, …)` over conditioning events above threshold,
/// where the last measurement repeats the first.
fn min_repeat<T: Real>(
    seq: &[&QuantumInstrument<T>],
    rho: &DensityOperator<T>,
) -> Result<T> {
    let full = sequential_distribution(seq, rho)?;
    let prefix = full.prefix_marginal(seq.len() - 1);
    let mut worst = T::one();
    for (k, p) in &prefix.entries {
        if *p <= T::lit(EVENT_THRESHOLD) {
            continue;
        }
        let mut key = k.clone();
        key.push(k[0]);
        let repeat = full.entries.iter().find(|(kk, _)| *kk == key).map(|(_, q)| *q);
        worst = worst.min(repeat.unwrap_or(T::zero()) / *p);
    }
    Ok(worst)
}

pub fn rre_report<T: Real>(
    a: &QuantumInstrument<T>,
    b: &QuantumInstrument<T>,
    rho: &DensityOperator<T>,
) -> Result<RreVerdict<T>> {
    let min_repeat_aa = min_repeat(&[a, a], rho)?;
    let min_repeat_aba = min_repeat(&[a, b, a], rho)?;
    let min_repeat_bab = min_repeat(&[b, a, b], rho)?;
    let pass = |v: T| v >= T::one() - T::lit(REPEAT_TOLERANCE);
    Ok(RreVerdict {
        aa: pass(min_repeat_aa),
        aba: pass(min_repeat_aba),
        bab: pass(min_repeat_bab),
        min_repeat_aa,
        min_repeat_aba,
        min_repeat_bab,
    })
}

fn check_yes_no<T: Real>(inst: &QuantumInstrument<T>) -> Result<()> {
    let o = inst.outcomes();
    let ok = o.len() == 2 && o.iter().any(|x| x == "yes") && o.iter().any(|x| x == "no");
    if ok {
        Ok(())
    } else {
        Err(Error::NotYesNo(o.to_vec()))
    }
}

/// Signed `q = p_AB(y,n) + p_AB(n,y) − p_BA(y,n) − p_BA(n,y)`.
pub fn qq_residual<T: Real>(
    a: &QuantumInstrument<T>,
    b: &QuantumInstrument<T>,
    rho: &DensityOperator<T>,
) -> Result<T> {
    check_yes_no(a)?;
    check_yes_no(b)?;
    let ab = sequential_distribution(&[a, b], rho)?;
    let ba = sequential_distribution(&[b, a], rho)?;
    Ok(ab.prob(&["yes", "no"])? + ab.prob(&["no", "yes"])?
        - ba.prob(&["yes", "no"])?
        - ba.prob(&["no", "yes"])?)
}

/// Joint diagnostics for a pair of yes/no instruments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EffectProfile<T> {
    pub qoe_present: bool,
    pub rre_holds: bool,
    pub qq_residual: T,
    pub details: ProfileDetails<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileDetails<T> {
    pub qoe_gap: T,
    pub rre: RreVerdict<T>,
    /// `(answers in asking order, probability)` for A then B.
    pub p_ab: Vec<(Vec<String>, T)>,
    pub p_ba: Vec<(Vec<String>, T)>,
}

/// What a candidate instrument pair is expected to show. `None` fields are
/// not checked.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Expectations {
    pub qoe_present: Option<bool>,
    pub rre_holds: Option<bool>,
    pub qq_tolerance: Option<f64>,
    pub qoe_threshold: f64,
}

impl Default for Expectations {
    fn default() -> Self {
        Self { qoe_present: None, rre_holds: None, qq_tolerance: None, qoe_threshold: QOE_THRESHOLD }
    }
}

impl Expectations {
    /// QOE present, RRE holding and QQ-equality within the default tolerance.
    pub fn combined() -> Self {
        Self {
            qoe_present: Some(true),
            rre_holds: Some(true),
            qq_tolerance: Some(QQ_TOLERANCE),
            qoe_threshold: QOE_THRESHOLD,
        }
    }
}

/// JSON summary `{qoe_gap, rre: {aa, aba, bab}, qq_residual, pass}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub qoe_gap: f64,
    pub rre: RreFlags,
    pub qq_residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RreFlags {
    pub aa: bool,
    pub aba: bool,
    pub bab: bool,
}

impl<T: Real> EffectProfile<T> {
    pub fn record(&self, pass: bool) -> ProfileRecord {
        let r = &self.details.rre;
        ProfileRecord {
            qoe_gap: self.details.qoe_gap.as_f64(),
            rre: RreFlags { aa: r.aa, aba: r.aba, bab: r.bab },
            qq_residual: self.qq_residual.as_f64(),
            pass,
        }
    }
}

/// Computes all three diagnostics and checks them against `expect`.
pub fn verify_effect_profile<T: Real>(
    a: &QuantumInstrument<T>,
    b: &QuantumInstrument<T>,
    rho: &DensityOperator<T>,
    expect: &Expectations,
) -> Result<(EffectProfile<T>, bool)> {
    let qq = qq_residual(a, b, rho)?;
    let gap = qoe_gap(a, b, rho)?;
    let rre = rre_report(a, b, rho)?;
    let profile = EffectProfile {
        qoe_present: gap > T::lit(expect.qoe_threshold),
        rre_holds: rre.rre_holds(),
        qq_residual: qq,
        details: ProfileDetails {
            qoe_gap: gap,
            rre,
            p_ab: sequential_distribution(&[a, b], rho)?.labeled(),
            p_ba: sequential_distribution(&[b, a], rho)?.labeled(),
        },
    };
    let pass = expect.qoe_present.is_none_or(|e| e == profile.qoe_present)
        && expect.rre_holds.is_none_or(|e| e == profile.rre_holds)
        && expect.qq_tolerance.is_none_or(|t| qq.abs() <= T::lit(t));
    Ok((profile, pass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{diag, HermitianObservable, Projector, StateVector};
    use crate::logic::state_distributivity;
    use crate::{ops, random};

    fn yn(m: crate::hilbert::ComplexMatrix<f64>) -> QuantumInstrument<f64> {
        QuantumInstrument::yes_no(&Projector::new(m).unwrap())
    }

    fn zero_plus() -> (QuantumInstrument<f64>, QuantumInstrument<f64>, DensityOperator<f64>) {
        (
            yn(diag(&[1.0, 0.0])),
            yn(ops::plus::<f64>().density().into_matrix()),
            StateVector::basis(2, 0).density(),
        )
    }

    #[test]
    fn commuting_projective_pair_has_no_effects() {
        let a = yn(diag(&[1.0, 0.0, 1.0]));
        let b = yn(diag(&[1.0, 1.0, 0.0]));
        let rho = random::density::<f64, _>(&mut random::seeded(1), 3);
        assert!(qoe_gap(&a, &b, &rho).unwrap() <= 1e-10);
        assert!(rre_report(&a, &b, &rho).unwrap().rre_holds());
        let (p, pass) = verify_effect_profile(
            &a,
            &b,
            &rho,
            &Expectations { qoe_present: Some(false), rre_holds: Some(true), qq_tolerance: Some(1e-10), ..Default::default() },
        )
        .unwrap();
        assert!(pass, "{p:?}");
    }

    #[test]
    fn zero_plus_order_effect() {
        let (a, b, rho) = zero_plus();
        let gap = qoe_gap(&a, &b, &rho).unwrap();
        assert!((gap - 0.25).abs() < 1e-12);
        assert_eq!(qoe_gap(&a, &a, &rho).unwrap(), 0.0);
    }

    #[test]
    fn zero_plus_replicability() {
        let (a, b, rho) = zero_plus();
        let r = rre_report(&a, &b, &rho).unwrap();
        assert!(r.aa);
        assert!(!r.aba);
        assert!((r.min_repeat_aba - 0.5).abs() < 1e-12);
        assert!(!r.rre_holds());
    }

    #[test]
    fn trivial_b_reduces_aba_to_aa() {
        let (a, _, rho) = zero_plus();
        let id = QuantumInstrument::trivial(2);
        let r = rre_report(&a, &id, &ops::plus::<f64>().density()).unwrap();
        assert!(r.aa && r.aba && r.bab);
        let r = rre_report(&a, &id, &rho).unwrap();
        assert!(r.rre_holds());
    }

    #[test]
    fn qq_requires_yes_no_labels() {
        let z = QuantumInstrument::projection(&HermitianObservable::new(ops::pauli_z::<f64>()).unwrap());
        let (a, _, rho) = zero_plus();
        assert!(matches!(qq_residual(&z, &a, &rho), Err(Error::NotYesNo(_))));
        assert_eq!(qq_residual(&a, &a, &rho).unwrap(), 0.0);
    }

    #[test]
    fn noncommuting_projective_profile() {
        let (a, b, rho) = zero_plus();
        let (p, pass) = verify_effect_profile(&a, &b, &rho, &Expectations::combined()).unwrap();
        assert!(p.qoe_present);
        assert!(!p.rre_holds);
        assert!(p.qq_residual.abs() <= 1e-12);
        assert!(!pass);
        let rec = p.record(pass);
        let json = serde_json::to_value(&rec).unwrap();
        assert_eq!(json["rre"]["aba"], false);
        assert!(json.get("qoe_gap").is_some());
    }

    #[test]
    fn qq_equality_for_random_projective_pairs() {
        let mut rng = random::seeded(500);
        for case in 0..200 {
            let dim = 2 + case % 5;
            let a = QuantumInstrument::yes_no(&random::proper_projector::<f64, _>(&mut rng, dim));
            let b = QuantumInstrument::yes_no(&random::proper_projector::<f64, _>(&mut rng, dim));
            let rho = random::density::<f64, _>(&mut rng, dim);
            assert!(qq_residual(&a, &b, &rho).unwrap().abs() <= 1e-10);
        }
    }

    #[test]
    fn non_projective_pair_breaks_qq_equality() {
        let mut rng = random::seeded(31);
        let mut worst = 0.0f64;
        for _ in 0..5 {
            let make = |rng: &mut rand_chacha::ChaCha8Rng| {
                let probe = StateVector::<f64>::basis(2, 0).density();
                let u = random::unitary::<f64, _>(rng, 4);
                let meter = vec![
                    ("yes".to_string(), Projector::coordinate(2, &[0])),
                    ("no".to_string(), Projector::coordinate(2, &[1])),
                ];
                crate::instruments::indirect_instrument(&probe, &u, &meter).unwrap()
            };
            let a = make(&mut rng);
            let b = make(&mut rng);
            let rho = random::density::<f64, _>(&mut rng, 2);
            worst = worst.max(qq_residual(&a, &b, &rho).unwrap().abs());
        }
        assert!(worst > 1e-6, "generic indirect instruments gave |q| = {worst}");
    }

    #[test]
    fn replicability_matches_state_distributivity() {
        let mut rng = random::seeded(99);
        let mut agree_true = 0;
        for case in 0..120 {
            let dim = 2 + case % 3;
            let (p, q, psi) = random::bridge_case::<f64, _>(&mut rng, dim);
            let rre = rre_report(
                &QuantumInstrument::yes_no(&p),
                &QuantumInstrument::yes_no(&q),
                &psi.density(),
            )
            .unwrap()
            .rre_holds();
            let dist = state_distributivity(&p, &q, &psi).unwrap();
            assert_eq!(rre, dist, "case {case}");
            agree_true += rre as usize;
        }
        assert!(agree_true > 10);
    }
}
