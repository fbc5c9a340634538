// Copyright 2026 The wqed Authors
// SPDX-License-Identifier: Apache-2.0

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wqed::output::{save_csv, save_json, to_json, write_csv};
use wqed::presets::{write_figure, FIGURES};
use wqed::{run_point, run_sweep, RunConfig, SweepResult};

/// Steady-state simulator for two qubits in a waveguide with complex
/// exchange.
#[derive(Parser)]
#[command(name = "wqed", version)]
struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, env = "WQED_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the base point of a config and print it as CSV.
    Point {
        #[arg(long)]
        config: PathBuf,
        /// Override a config entry, e.g. `--set params.J=1.5`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Print JSON instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Run the sweep described by a config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        /// Also write a JSON mirror of the table.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Write the data behind one of the canned figures.
    Figure {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(FIGURES))]
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the built-in self-checks.
    Verify,
}

fn report_failures(result: &SweepResult) -> ExitCode {
    let failed = result.failures();
    if failed == 0 {
        return ExitCode::SUCCESS;
    }
    eprintln!("wqed: {failed} of {} points failed", result.rows.len());
    for row in result.rows.iter().filter(|r| r.failed()).take(5) {
        for p in row.ports.iter().filter(|p| p.failed()) {
            let at: Vec<String> = row.coords.iter().map(|(v, x)| format!("{}={x}", v.name())).collect();
            eprintln!(
                "  [{}] {}: {}",
                p.port.tag(),
                if at.is_empty() { "base point".into() } else { at.join(", ") },
                p.error.as_deref().unwrap_or_default()
            );
        }
    }
    ExitCode::FAILURE
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Point { config, set, json } => {
            let cfg = RunConfig::load(&config, &set)?;
            let result = run_point(&cfg)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&to_json(&result))?);
            } else {
                write_csv(io::stdout().lock(), &result)?;
            }
            Ok(report_failures(&result))
        }
        Command::Sweep { config, set, out, json } => {
            let cfg = RunConfig::load(&config, &set)?;
            let result = run_sweep(&cfg, cli.workers)?;
            save_csv(&out, &result)?;
            if let Some(path) = json {
                save_json(&path, &result)?;
            }
            Ok(report_failures(&result))
        }
        Command::Figure { name, out } => {
            let report = write_figure(&name, &out, cli.workers)?;
            for f in &report.files {
                println!("{}", f.display());
            }
            println!("{}", report.manifest.display());
            if report.failures > 0 {
                eprintln!("wqed: {} points failed", report.failures);
                return Ok(ExitCode::FAILURE);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify => {
            let report = wqed::verify::run()?;
            for c in &report.checks {
                println!("{c}");
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("wqed: {e:#}");
            ExitCode::from(2)
        }
    }
}
