// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! Scenario execution.

use serde_json::{json, Value};

use qlike::contextuality::{chsh, chsh_sampled, sorkin_residual};
use qlike::effects::{
    memory_register_pair, qoe_gap, qq_residual, rre_report, search_reference,
    verify_effect_profile, Expectations, QQ_TOLERANCE,
};
use qlike::hilbert::{spectrum_additivity_report, DensityOperator, Subsystem};
use qlike::instruments::sequential_distribution;
use qlike::literal::MatrixLiteral;
use qlike::logic::{commute, distributivity_violations, join, meet, state_distributivity_deviations};
use qlike::open_systems::{
    decision_distribution_with, evolve, hump_profile, order_stability_report, stationary_state,
    von_neumann_entropy, DECOHERENCE_THRESHOLD,
};
use qlike::{random, Error};

use crate::config::{GkslInputs, Inputs, PairInputs, ProfileInputs, Scenario};
use crate::CliError;

/// Default stationary-state residual bound.
const STATIONARY_TOL: f64 = 1e-9;

/// Rows for CSV output, with trailing `#` comment lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub comments: Vec<String>,
}

/// Outcome of one scenario, ready to be written.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub result: Value,
    /// Present for trajectory-shaped kinds.
    pub table: Option<Table>,
}

fn compute(e: Error) -> CliError {
    CliError::Compute(e.to_string())
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Shortest round-trip form, exponent notation for small magnitudes.
fn num(x: f64) -> String {
    Value::from(x).to_string()
}

/// Runs a validated scenario. `seed` and `tolerance` are the effective
/// values after command-line overrides.
pub fn run_scenario(s: &Scenario, seed: u64, tolerance: Option<f64>) -> Result<Outcome, CliError> {
    let plain = |result: Value| Ok(Outcome { result, table: None });
    match &s.inputs {
        Inputs::Logic(l) => {
            let mut out = json!({
                "commute": commute(&l.p, &l.q, tolerance.unwrap_or(qlike::logic::DEFAULT_COMMUTE_TOL)).map_err(compute)?,
                "meet_rank": meet(&l.p, &l.q).map_err(compute)?.rank(),
                "join_rank": join(&l.p, &l.q).map_err(compute)?.rank(),
            });
            if let Some(r) = &l.r {
                let v = distributivity_violations(&l.p, &l.q, r).map_err(compute)?;
                out["distributive"] = json!(v.is_empty());
                out["violations"] = to_value(&v);
            }
            if let Some(psi) = &l.state {
                let limit = tolerance.unwrap_or(qlike::logic::VIOLATION_THRESHOLD);
                let devs = state_distributivity_deviations(&l.p, &l.q, psi).map_err(compute)?;
                let worst = devs.iter().map(|(_, d)| *d).fold(0.0, f64::max);
                out["state_distributive"] = json!(worst <= limit);
                out["state_max_deviation"] = json!(worst);
            }
            plain(out)
        }
        Inputs::Sequential { instruments, state } => {
            let refs: Vec<_> = instruments.iter().collect();
            let d = sequential_distribution(&refs, state).map_err(compute)?;
            let entries: Vec<Value> = d
                .labeled()
                .into_iter()
                .map(|(k, p)| json!({"outcomes": k, "probability": p}))
                .collect();
            plain(json!({"total": d.total(), "distribution": entries}))
        }
        Inputs::Qqe(PairInputs { a, b, state }) => {
            let q = qq_residual(a, b, state).map_err(compute)?;
            let tol = tolerance.unwrap_or(QQ_TOLERANCE);
            plain(json!({
                "qq_residual": q,
                "qoe_gap": qoe_gap(a, b, state).map_err(compute)?,
                "tolerance": tol,
                "qq_equality": q.abs() <= tol,
            }))
        }
        Inputs::Rre(PairInputs { a, b, state }) => {
            let r = rre_report(a, b, state).map_err(compute)?;
            let mut v = to_value(&r);
            v["rre_holds"] = json!(r.rre_holds());
            plain(v)
        }
        Inputs::Profile(p) => profile(p, seed),
        Inputs::Gksl(g) => gksl(g, tolerance),
        Inputs::OrderStability(g) => order(g),
        Inputs::Chsh(c) => {
            let [a1, a2, b1, b2] = &c.settings;
            let report = match c.trials {
                Some(n) => chsh_sampled(&c.state, [a1, a2, b1, b2], c.dims, n, &mut random::seeded(seed)),
                None => chsh(&c.state, [a1, a2, b1, b2], c.dims),
            }
            .map_err(compute)?;
            let mut v = to_value(&report);
            v["sampled"] = json!(c.trials.is_some());
            v["violates_classical_bound"] = json!(report.s > report.bound_classical);
            plain(v)
        }
        Inputs::Sorkin(cfg) => {
            let r = sorkin_residual(cfg).map_err(compute)?;
            plain(to_value(&r))
        }
        Inputs::Spectrum { a, b } => plain(to_value(&spectrum_additivity_report(a, b).map_err(compute)?)),
    }
}

fn profile(p: &ProfileInputs, seed: u64) -> Result<Outcome, CliError> {
    let certify = |a, b, st: &DensityOperator<f64>, expect: &Expectations| -> Result<Value, CliError> {
        let (profile, pass) = verify_effect_profile(a, b, st, expect).map_err(compute)?;
        let mut v = to_value(&profile.record(pass));
        v["details"] = to_value(&profile.details);
        Ok(v)
    };
    let result = match p {
        ProfileInputs::Pair { pair, expect } => certify(&pair.a, &pair.b, &pair.state, expect)?,
        ProfileInputs::Register { params, expect } => {
            let s = memory_register_pair::<f64>(params).map_err(compute)?;
            let mut v = certify(&s.a, &s.b, &s.state, expect)?;
            v["parameters"] = to_value(params);
            v
        }
        ProfileInputs::Search { trials, probe_dim, expect } => {
            let found = search_reference(&mut random::seeded(seed), *trials, *probe_dim, expect).map_err(compute)?;
            match found {
                Some((params, profile)) => {
                    let mut v = to_value(&profile.record(true));
                    v["parameters"] = to_value(&params);
                    v
                }
                None => json!({"pass": false, "trials": trials}),
            }
        }
    };
    Ok(Outcome { result, table: None })
}

fn gksl(g: &GkslInputs, tolerance: Option<f64>) -> Result<Outcome, CliError> {
    let traj = evolve(&g.generator, &g.state, g.t_end, g.dt).map_err(compute)?;
    let hump = hump_profile(&traj).map_err(compute)?;
    let stationary = match stationary_state(&g.generator, tolerance.unwrap_or(STATIONARY_TOL)) {
        Ok(s) => json!({
            "state": MatrixLiteral::from_matrix(s.state.matrix()),
            "unique": s.unique,
            "kernel_dim": s.kernel_dim,
            "residual": s.residual,
        }),
        Err(e) => json!({"error": e.to_string()}),
    };
    let decision = match &g.decision {
        Some(obs) => match decision_distribution_with(traj.final_state(), obs, tolerance.unwrap_or(DECOHERENCE_THRESHOLD)) {
            Ok(t) => to_value(&t),
            Err(e) => json!({"error": e.to_string()}),
        },
        None => Value::Null,
    };
    let subsystems = match g.dims {
        Some(dims) => Some(
            traj.states
                .iter()
                .map(|s| {
                    Ok([
                        von_neumann_entropy(&s.reduce(dims, Subsystem::A)?),
                        von_neumann_entropy(&s.reduce(dims, Subsystem::B)?),
                    ])
                })
                .collect::<Result<Vec<_>, Error>>()
                .map_err(compute)?,
        ),
        None => None,
    };

    let mut header = vec!["time".to_string(), "S_vonNeumann".into(), "S_linear".into()];
    if subsystems.is_some() {
        header.extend(["S_A".to_string(), "S_B".into()]);
    }
    if g.dump_states {
        header.push("rho".into());
    }
    let mut rows = Vec::with_capacity(traj.len());
    for (k, t) in traj.times.iter().enumerate() {
        let e = traj.entropies[k];
        let mut row = vec![num(*t), num(e.von_neumann), num(e.linear)];
        if let Some(sub) = &subsystems {
            row.extend([num(sub[k][0]), num(sub[k][1])]);
        }
        if g.dump_states {
            row.push(serde_json::to_string(&MatrixLiteral::from_matrix(traj.states[k].matrix())).expect("literal"));
        }
        rows.push(row);
    }
    let mut comments = vec![
        format!("hump_count,{}", hump.hump_count),
        format!("camel_shaped,{}", hump.camel_shaped),
    ];
    for p in &hump.peaks {
        comments.push(format!(
            "peak,time={},height={},rise_start={},fall_end={},rise={},fall={}",
            num(p.time),
            num(p.height),
            num(p.rise_start),
            num(p.fall_end),
            num(p.rise),
            num(p.fall)
        ));
    }
    comments.push(format!("clip_events,{}", traj.clip_events));
    comments.push(format!("max_trace_drift,{}", num(traj.max_trace_drift)));

    let mut result = json!({
        "times": traj.times,
        "entropies": to_value(&traj.entropies),
        "hump": to_value(&hump),
        "clip_events": traj.clip_events,
        "max_trace_drift": traj.max_trace_drift,
        "min_eigenvalue": traj.min_eigenvalue,
        "final_state": MatrixLiteral::from_matrix(traj.final_state().matrix()),
        "stationary": stationary,
    });
    if let Some(sub) = &subsystems {
        result["subsystem_entropies"] = to_value(sub);
    }
    if !decision.is_null() {
        result["decision"] = decision;
    }
    if g.dump_states {
        result["states"] = Value::Array(
            traj.states.iter().map(|s| to_value(&MatrixLiteral::from_matrix(s.matrix()))).collect(),
        );
    }
    Ok(Outcome { result, table: Some(Table { header, rows, comments }) })
}

fn order(g: &GkslInputs) -> Result<Outcome, CliError> {
    let dims = g.dims.expect("validated at parse time");
    let r = order_stability_report(&g.generator, &g.state, dims, g.t_end, g.dt).map_err(compute)?;
    let header = ["time", "S_vonNeumann", "S_A", "S_B"].map(String::from).to_vec();
    let rows = (0..r.times.len())
        .map(|k| vec![num(r.times[k]), num(r.global[k]), num(r.subsystem_a[k]), num(r.subsystem_b[k])])
        .collect();
    let comments = vec![
        format!("global_increase,{}", num(r.global_increase)),
        format!("max_subsystem_increase,{}", num(r.max_subsystem_increase)),
        format!("order_stable,{}", r.order_stable),
    ];
    Ok(Outcome { result: to_value(&r), table: Some(Table { header, rows, comments }) })
}
