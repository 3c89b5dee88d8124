// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

//! Scenario runner behind the `qlike` command.
//!
//! A scenario is one JSON document `{kind, seed?, tolerance?, output?, inputs}`.
//! [`parse_scenario`] validates it into domain objects, [`run_scenario`]
//! computes the result and [`render`] writes the report as JSON or CSV.

pub mod config;
pub mod report;
pub mod run;

pub use config::{parse_scenario, Format, Inputs, Scenario, KINDS};
pub use report::{render, Report};
pub use run::{run_scenario, Outcome};

/// Failure classes, mapped to distinct exit codes.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    /// Bad configuration: unreadable, malformed or failing validation.
    #[error("{0}")]
    Config(String),
    /// A computation or output step failed.
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            Self::Compute(_) => 1,
        }
    }
}

/// Effective settings after command-line overrides.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<String>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
}

/// Parses, runs and renders. Returns the rendered text and where it goes
/// (`None` for standard output).
pub fn execute(config_text: &str, o: &Overrides) -> Result<(String, Option<String>), CliError> {
    let s = parse_scenario(config_text)?;
    if let Some(t) = o.tolerance {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Config("--tolerance: must be positive and finite".into()));
        }
    }
    let seed = o.seed.or(s.seed).unwrap_or(0);
    let tolerance = o.tolerance.or(s.tolerance);
    let format = o.format.or(s.output.format).unwrap_or(Format::Json);
    let outcome = run_scenario(&s, seed, tolerance)?;
    let report = Report::new(&s.kind, &s.digest, seed, tolerance, outcome.result.clone());
    let text = render(&report, &outcome, format)?;
    Ok((text, o.out.clone().or(s.output.path.clone())))
}
