// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! Scenario documents: parsing and validation into domain objects.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use qlike::effects::{Expectations, MemoryRegisterParams};
use qlike::hilbert::{
    validate_density, ComplexMatrix, DensityOperator, HermitianObservable, Projector, StateVector,
};
use qlike::instruments::{Effect, QuantumInstrument};
use qlike::literal::{MatrixLiteral, VectorLiteral};
use qlike::open_systems::GkslGenerator;

use crate::CliError;

pub const KINDS: [&str; 10] = [
    "logic-check",
    "sequential",
    "qqe",
    "rre",
    "profile",
    "gksl",
    "order-stability",
    "chsh",
    "sorkin",
    "spectrum",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<String>,
    pub format: Option<Format>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    kind: String,
    seed: Option<u64>,
    tolerance: Option<f64>,
    #[serde(default)]
    output: OutputSpec,
    inputs: Value,
}

/// A validated scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub kind: String,
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
    pub output: OutputSpec,
    pub inputs: Inputs,
    /// SHA-256 of the canonical (key-sorted, compact) config JSON.
    pub digest: String,
}

#[derive(Debug, Clone)]
pub struct LogicInputs {
    pub p: Projector<f64>,
    pub q: Projector<f64>,
    pub r: Option<Projector<f64>>,
    pub state: Option<StateVector<f64>>,
}

#[derive(Debug, Clone)]
pub struct PairInputs {
    pub a: QuantumInstrument<f64>,
    pub b: QuantumInstrument<f64>,
    pub state: DensityOperator<f64>,
}

#[derive(Debug, Clone)]
pub enum ProfileInputs {
    Pair { pair: PairInputs, expect: Expectations },
    Register { params: MemoryRegisterParams, expect: Expectations },
    Search { trials: usize, probe_dim: usize, expect: Expectations },
}

#[derive(Debug, Clone)]
pub struct GkslInputs {
    pub generator: GkslGenerator<f64>,
    pub state: DensityOperator<f64>,
    pub t_end: f64,
    pub dt: f64,
    pub dims: Option<(usize, usize)>,
    pub dump_states: bool,
    pub decision: Option<HermitianObservable<f64>>,
}

#[derive(Debug, Clone)]
pub struct ChshInputs {
    pub state: DensityOperator<f64>,
    pub dims: (usize, usize),
    pub settings: [qlike::Dichotomic64; 4],
    pub trials: Option<usize>,
}

#[derive(Debug, Clone)]
pub enum Inputs {
    Logic(LogicInputs),
    Sequential { instruments: Vec<QuantumInstrument<f64>>, state: DensityOperator<f64> },
    Qqe(PairInputs),
    Rre(PairInputs),
    Profile(ProfileInputs),
    Gksl(GkslInputs),
    OrderStability(GkslInputs),
    Chsh(ChshInputs),
    Sorkin(qlike::Slits64),
    Spectrum { a: HermitianObservable<f64>, b: HermitianObservable<f64> },
}

// ---- raw input shapes ------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    density: Option<MatrixLiteral>,
    pure: Option<VectorLiteral>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstrument {
    observable: Option<MatrixLiteral>,
    projector: Option<MatrixLiteral>,
    outcomes: Option<Vec<String>>,
    kraus: Option<BTreeMap<String, Vec<MatrixLiteral>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLogic {
    p: MatrixLiteral,
    q: MatrixLiteral,
    r: Option<MatrixLiteral>,
    state: Option<VectorLiteral>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSequential {
    instruments: Vec<RawInstrument>,
    state: RawState,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    a: RawInstrument,
    b: RawInstrument,
    state: RawState,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSearch {
    trials: usize,
    #[serde(default = "default_probe_dim")]
    probe_dim: usize,
}

fn default_probe_dim() -> usize {
    4
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfile {
    a: Option<RawInstrument>,
    b: Option<RawInstrument>,
    state: Option<RawState>,
    register: Option<MemoryRegisterParams>,
    search: Option<RawSearch>,
    expect: Option<Expectations>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGksl {
    hamiltonian: MatrixLiteral,
    #[serde(default)]
    jumps: Vec<MatrixLiteral>,
    state: RawState,
    t_end: f64,
    dt: f64,
    dims: Option<[usize; 2]>,
    #[serde(default)]
    dump_states: bool,
    decision: Option<MatrixLiteral>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawDichotomic {
    Angle { angle: f64 },
    Matrix(MatrixLiteral),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChsh {
    state: RawState,
    #[serde(default = "default_dims")]
    dims: [usize; 2],
    a1: RawDichotomic,
    a2: RawDichotomic,
    b1: RawDichotomic,
    b2: RawDichotomic,
    trials: Option<usize>,
}

fn default_dims() -> [usize; 2] {
    [2, 2]
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSorkin {
    slits: Vec<MatrixLiteral>,
    detector: MatrixLiteral,
    source: VectorLiteral,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpectrum {
    a: MatrixLiteral,
    b: MatrixLiteral,
}

// ---- helpers -----------------------------------------------------------------

fn at(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{path}: {msg}"))
}

/// Deserializes `value`, reporting failures with their path below `prefix`.
fn typed<T: DeserializeOwned>(value: &Value, prefix: &str) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let path = if inner == "." { prefix.to_string() } else { format!("{prefix}.{inner}") };
        at(&path, e.inner())
    })
}

fn matrix(lit: &MatrixLiteral, path: &str) -> Result<ComplexMatrix<f64>, CliError> {
    lit.to_matrix().map_err(|e| at(path, e))
}

fn state(raw: &RawState, path: &str) -> Result<DensityOperator<f64>, CliError> {
    match (&raw.density, &raw.pure) {
        (Some(m), None) => {
            let p = format!("{path}.density");
            validate_density(&matrix(m, &p)?).map_err(|e| at(&p, e))
        }
        (None, Some(v)) => Ok(pure(v, &format!("{path}.pure"))?.density()),
        _ => Err(at(path, "give exactly one of `density` or `pure`")),
    }
}

fn pure(v: &VectorLiteral, path: &str) -> Result<StateVector<f64>, CliError> {
    let v = v.to_vector().map_err(|e| at(path, e))?;
    StateVector::new(v).map_err(|e| at(path, e))
}

fn projector(lit: &MatrixLiteral, path: &str) -> Result<Projector<f64>, CliError> {
    Projector::new(matrix(lit, path)?).map_err(|e| at(path, e))
}

fn observable(lit: &MatrixLiteral, path: &str) -> Result<HermitianObservable<f64>, CliError> {
    HermitianObservable::new(matrix(lit, path)?).map_err(|e| at(path, e))
}

fn instrument(raw: &RawInstrument, path: &str) -> Result<QuantumInstrument<f64>, CliError> {
    match (&raw.observable, &raw.projector, &raw.outcomes, &raw.kraus) {
        (Some(m), None, None, None) => {
            Ok(QuantumInstrument::projection(&observable(m, &format!("{path}.observable"))?))
        }
        (None, Some(m), None, None) => {
            Ok(QuantumInstrument::yes_no(&projector(m, &format!("{path}.projector"))?))
        }
        (None, None, Some(outcomes), Some(kraus)) => {
            let mut table = Vec::with_capacity(outcomes.len());
            for o in outcomes {
                let lits = kraus
                    .get(o)
                    .ok_or_else(|| at(&format!("{path}.kraus"), format!("no Kraus list for outcome {o:?}")))?;
                let ms = lits
                    .iter()
                    .enumerate()
                    .map(|(i, l)| matrix(l, &format!("{path}.kraus.{o}[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                table.push((o.clone(), ms));
            }
            if let Some(extra) = kraus.keys().find(|k| !outcomes.contains(k)) {
                return Err(at(&format!("{path}.kraus.{extra}"), "label not listed in `outcomes`"));
            }
            QuantumInstrument::from_kraus(table).map_err(|e| at(path, e))
        }
        _ => Err(at(path, "give exactly one of `observable`, `projector`, or `outcomes` with `kraus`")),
    }
}

fn same_dim(path: &str, expected: usize, found: usize) -> Result<(), CliError> {
    if expected == found {
        Ok(())
    } else {
        Err(at(path, format!("dimension {found} does not match {expected}")))
    }
}

fn pair(raw: &RawPair) -> Result<PairInputs, CliError> {
    let a = instrument(&raw.a, "inputs.a")?;
    let b = instrument(&raw.b, "inputs.b")?;
    let state = state(&raw.state, "inputs.state")?;
    same_dim("inputs.b", a.dim(), b.dim())?;
    same_dim("inputs.state", a.dim(), state.dim())?;
    Ok(PairInputs { a, b, state })
}

fn yes_no_labels(inst: &QuantumInstrument<f64>, path: &str) -> Result<(), CliError> {
    let o = inst.outcomes();
    if o.len() == 2 && o.iter().any(|x| x == "yes") && o.iter().any(|x| x == "no") {
        Ok(())
    } else {
        Err(at(path, format!("outcomes must be exactly {{yes, no}}, found {o:?}")))
    }
}

fn gksl(raw: &RawGksl) -> Result<GkslInputs, CliError> {
    let h = matrix(&raw.hamiltonian, "inputs.hamiltonian")?;
    let jumps = raw
        .jumps
        .iter()
        .enumerate()
        .map(|(i, l)| matrix(l, &format!("inputs.jumps[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let generator = GkslGenerator::new(h, jumps).map_err(|e| at("inputs", e))?;
    let state = state(&raw.state, "inputs.state")?;
    same_dim("inputs.state", generator.dim(), state.dim())?;
    for (name, v) in [("t_end", raw.t_end), ("dt", raw.dt)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(at(&format!("inputs.{name}"), "must be positive and finite"));
        }
    }
    let dims = raw.dims.map(|[a, b]| (a, b));
    if let Some((a, b)) = dims {
        same_dim("inputs.dims", generator.dim(), a * b)?;
    }
    let decision = match &raw.decision {
        Some(m) => {
            let o = observable(m, "inputs.decision")?;
            same_dim("inputs.decision", generator.dim(), o.dim())?;
            Some(o)
        }
        None => None,
    };
    Ok(GkslInputs { generator, state, t_end: raw.t_end, dt: raw.dt, dims, dump_states: raw.dump_states, decision })
}

fn dichotomic(raw: &RawDichotomic, path: &str) -> Result<qlike::Dichotomic64, CliError> {
    match raw {
        RawDichotomic::Angle { angle } => Ok(qlike::Dichotomic64::spin(*angle)),
        RawDichotomic::Matrix(m) => qlike::Dichotomic64::new(matrix(m, path)?).map_err(|e| at(path, e)),
    }
}

fn check_kind(kind: &str) -> Result<(), CliError> {
    if KINDS.contains(&kind) {
        Ok(())
    } else {
        Err(at("kind", format!("unknown kind {kind:?}; valid kinds: {}", KINDS.join(", "))))
    }
}

fn digest(value: &Value) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(value.to_string().as_bytes()))
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario, CliError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Config(format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column())))?;
    let raw: RawScenario = typed(&value, "$")?;
    check_kind(&raw.kind)?;
    if let Some(t) = raw.tolerance {
        if !(t > 0.0 && t.is_finite()) {
            return Err(at("tolerance", "must be positive and finite"));
        }
    }
    let v = &raw.inputs;
    let inputs = match raw.kind.as_str() {
        "logic-check" => {
            let r: RawLogic = typed(v, "inputs")?;
            let p = projector(&r.p, "inputs.p")?;
            let q = projector(&r.q, "inputs.q")?;
            same_dim("inputs.q", p.dim(), q.dim())?;
            let rr = r.r.as_ref().map(|m| projector(m, "inputs.r")).transpose()?;
            if let Some(rr) = &rr {
                same_dim("inputs.r", p.dim(), rr.dim())?;
            }
            let st = r.state.as_ref().map(|s| pure(s, "inputs.state")).transpose()?;
            if let Some(s) = &st {
                same_dim("inputs.state", p.dim(), s.dim())?;
            }
            Inputs::Logic(LogicInputs { p, q, r: rr, state: st })
        }
        "sequential" => {
            let r: RawSequential = typed(v, "inputs")?;
            if r.instruments.is_empty() {
                return Err(at("inputs.instruments", "at least one instrument required"));
            }
            let state = state(&r.state, "inputs.state")?;
            let mut instruments = Vec::new();
            for (i, raw) in r.instruments.iter().enumerate() {
                let p = format!("inputs.instruments[{i}]");
                let inst = instrument(raw, &p)?;
                same_dim(&p, state.dim(), inst.dim())?;
                instruments.push(inst);
            }
            Inputs::Sequential { instruments, state }
        }
        "qqe" => {
            let p = pair(&typed(v, "inputs")?)?;
            yes_no_labels(&p.a, "inputs.a")?;
            yes_no_labels(&p.b, "inputs.b")?;
            Inputs::Qqe(p)
        }
        "rre" => Inputs::Rre(pair(&typed(v, "inputs")?)?),
        "profile" => {
            let r: RawProfile = typed(v, "inputs")?;
            let mut expect = r.expect.unwrap_or_else(Expectations::combined);
            if let Some(t) = raw.tolerance {
                expect.qq_tolerance = Some(t);
            }
            let forms = [r.a.is_some() || r.b.is_some() || r.state.is_some(), r.register.is_some(), r.search.is_some()];
            if forms.iter().filter(|&&f| f).count() != 1 {
                return Err(at("inputs", "give exactly one of `a`/`b`/`state`, `register`, or `search`"));
            }
            let p = if let Some(params) = r.register {
                if params.probe_dim < 4 {
                    return Err(at("inputs.register.probe_dim", "must be at least 4"));
                }
                ProfileInputs::Register { params, expect }
            } else if let Some(s) = r.search {
                if s.probe_dim < 4 {
                    return Err(at("inputs.search.probe_dim", "must be at least 4"));
                }
                ProfileInputs::Search { trials: s.trials, probe_dim: s.probe_dim, expect }
            } else {
                let (a, b, st) = match (r.a, r.b, r.state) {
                    (Some(a), Some(b), Some(s)) => (a, b, s),
                    _ => return Err(at("inputs", "`a`, `b` and `state` are all required")),
                };
                let pair = pair(&RawPair { a, b, state: st })?;
                yes_no_labels(&pair.a, "inputs.a")?;
                yes_no_labels(&pair.b, "inputs.b")?;
                ProfileInputs::Pair { pair, expect }
            };
            Inputs::Profile(p)
        }
        "gksl" => Inputs::Gksl(gksl(&typed(v, "inputs")?)?),
        "order-stability" => {
            let g = gksl(&typed(v, "inputs")?)?;
            if g.dims.is_none() {
                return Err(at("inputs.dims", "required for order-stability"));
            }
            Inputs::OrderStability(g)
        }
        "chsh" => {
            let r: RawChsh = typed(v, "inputs")?;
            let state = state(&r.state, "inputs.state")?;
            let dims = (r.dims[0], r.dims[1]);
            same_dim("inputs.dims", state.dim(), dims.0 * dims.1)?;
            let mut settings = Vec::with_capacity(4);
            for (name, raw, d) in [("a1", &r.a1, dims.0), ("a2", &r.a2, dims.0), ("b1", &r.b1, dims.1), ("b2", &r.b2, dims.1)] {
                let path = format!("inputs.{name}");
                let o = dichotomic(raw, &path)?;
                same_dim(&path, d, o.dim())?;
                settings.push(o);
            }
            if r.trials == Some(0) {
                return Err(at("inputs.trials", "must be positive"));
            }
            let settings: [qlike::Dichotomic64; 4] = settings.try_into().expect("four settings");
            Inputs::Chsh(ChshInputs { state, dims, settings, trials: r.trials })
        }
        "sorkin" => {
            let r: RawSorkin = typed(v, "inputs")?;
            if r.slits.len() != 3 {
                return Err(at("inputs.slits", format!("expected 3 slits, found {}", r.slits.len())));
            }
            let slits = r
                .slits
                .iter()
                .enumerate()
                .map(|(i, m)| projector(m, &format!("inputs.slits[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let detector = Effect::new(matrix(&r.detector, "inputs.detector")?).map_err(|e| at("inputs.detector", e))?;
            let source = pure(&r.source, "inputs.source")?;
            let cfg = qlike::Slits64::new(slits, detector, source).map_err(|e| at("inputs.slits", e))?;
            Inputs::Sorkin(cfg)
        }
        "spectrum" => {
            let r: RawSpectrum = typed(v, "inputs")?;
            let a = observable(&r.a, "inputs.a")?;
            let b = observable(&r.b, "inputs.b")?;
            same_dim("inputs.b", a.dim(), b.dim())?;
            Inputs::Spectrum { a, b }
        }
        _ => unreachable!("kind checked above"),
    };
    Ok(Scenario {
        kind: raw.kind,
        seed: raw.seed,
        tolerance: raw.tolerance,
        output: raw.output,
        inputs,
        digest: digest(&value),
    })
}
