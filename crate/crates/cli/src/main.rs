// Copyright 2026 The qlike Authors
// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use qlike_cli::{execute, CliError, Format, Overrides};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

/// Run one quantum-like modeling scenario and write its report.
#[derive(Debug, Parser)]
#[command(name = "qlike", version)]
struct Args {
    /// Scenario JSON document.
    #[arg(long)]
    config: String,
    /// Report path (standard output if omitted and the config names none).
    #[arg(long)]
    out: Option<String>,
    /// Report format.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Seed for sampled quantities; overrides the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Certification tolerance; overrides the config and the defaults.
    #[arg(long)]
    tolerance: Option<f64>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qlike: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(args: &Args) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::Config(format!("reading {}: {e}", args.config)))?;
    let overrides = Overrides {
        out: args.out.clone(),
        format: args.format.map(|f| match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }),
        seed: args.seed,
        tolerance: args.tolerance,
    };
    let (report, dest) = execute(&text, &overrides)?;
    match dest {
        Some(path) => std::fs::write(&path, report)
            .map_err(|e| CliError::Compute(format!("writing {path}: {e}"))),
        None => {
            use std::io::Write;
            match std::io::stdout().lock().write_all(report.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(CliError::Compute(format!("writing standard output: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}
