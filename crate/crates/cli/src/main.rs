//! `imcf-lab`: build surfaces, run flows, audit runs and sweep parameters.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
//!
//! Exit codes: 0 ok (flow completed), 10 singularity detected, 11
//! self-intersection, 12 step limit reached, 1 runtime error or failed
//! audit, 2 configuration error.

mod commands;
mod config;
mod error;
mod output;
mod shapes;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use commands::audit::AuditArgs;
use config::{read_json, AuditSpec, ExperimentConfig, Overrides};
use error::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "imcf-lab", version, about = "Inverse mean curvature flow experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a surface and write its profile and build report.
    Build(Common),
    /// Run a flow and write the trajectory, frames, snapshots and report.
    Flow(Common),
    /// Audit a run directory.
    Audit {
        #[command(flatten)]
        common: Common,
        /// Run directory to audit (defaults to the config's output_dir).
        #[arg(long)]
        run: Option<PathBuf>,
        /// Inner run for the avoidance audit.
        #[arg(long)]
        inner: Option<PathBuf>,
        /// Comma-separated audit names.
        #[arg(long, value_delimiter = ',')]
        audits: Option<Vec<String>>,
    },
    /// Run one flow per value of the config's sweep parameter.
    Sweep(Common),
}

#[derive(Args, Clone, Default)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Builder name (sphere, torus, bean, egg, peanut, dumbbell, radial, profile).
    #[arg(long)]
    shape: Option<String>,
    #[arg(long = "R")]
    big_r: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    d: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    amplitude: Option<f64>,
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    path: Option<PathBuf>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        let mut params: Vec<(&'static str, Value)> = Vec::new();
        let floats = [("R", self.big_r), ("a", self.a), ("b", self.b), ("k", self.k), ("d", self.d), ("r", self.r), ("amplitude", self.amplitude)];
        for (key, v) in floats {
            if let Some(v) = v {
                params.push((key, v.into()));
            }
        }
        if let Some(n) = self.n {
            params.push(("n", n.into()));
        }
        if let Some(p) = &self.preset {
            params.push(("preset", Value::String(p.clone())));
        }
        if let Some(p) = &self.path {
            params.push(("path", Value::String(p.display().to_string())));
        }
        Overrides {
            out: self.out.clone(),
            m: self.m,
            t_end: self.t_end,
            seed: self.seed,
            shape: self.shape.clone(),
            shape_params: params,
        }
    }

    fn experiment(&self) -> CliResult<ExperimentConfig> {
        ExperimentConfig::load(self.config.as_deref(), &self.overrides())
    }
}

fn dispatch(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Build(c) => commands::build::run(&c.experiment()?),
        Command::Flow(c) => commands::flow::run(&c.experiment()?),
        Command::Sweep(c) => {
            let path = c.config.as_deref().ok_or_else(|| CliError::Config("sweep needs --config".into()))?;
            let mut base = read_json(path)?;
            let out = c.out.clone().or_else(|| base.get("output_dir").and_then(Value::as_str).map(PathBuf::from));
            let out = out.unwrap_or_else(|| PathBuf::from("out"));
            Overrides { out: None, ..c.overrides() }.apply(&mut base)?;
            commands::sweep::run(&base, &out)
        }
        Command::Audit { common, run, inner, audits } => {
            let config = match &common.config {
                Some(_) => Some(common.experiment()?),
                None => None,
            };
            let run = run
                .or_else(|| config.as_ref().map(|c| c.output_dir.clone()))
                .ok_or_else(|| CliError::Config("audit needs --run DIR or a config with output_dir".into()))?;
            let audits = audits
                .map(|names| names.iter().map(|n| AuditSpec::from_name(n)).collect::<CliResult<Vec<_>>>())
                .transpose()?;
            commands::audit::run(&AuditArgs { run, inner, audits, config, seed: common.seed, out: common.out })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("imcf-lab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
