use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use super::flow::{execute, exit_code};
use crate::config::{set_path, ExperimentConfig};
use crate::error::{CliError, CliResult};
use crate::output::{create_dir, write, write_json};

pub const THREADS_ENV: &str = "IMCF_LAB_THREADS";

#[derive(Debug, Serialize)]
pub struct SweepRow {
    pub index: usize,
    pub value: Value,
    pub output_dir: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub event: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_event: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn threads() -> CliResult<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Config(format!("{THREADS_ENV} = '{v}' is not a positive integer"))),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Expand the sweep into one config per value, each in its own run directory.
pub fn expand(base: &Value, out: &Path) -> CliResult<Vec<(Value, ExperimentConfig)>> {
    let spec = base
        .get("sweep")
        .cloned()
        .ok_or_else(|| CliError::Config("sweep needs a 'sweep' block with 'param' and 'values'".into()))?;
    let spec: crate::config::SweepSpec =
        serde_json::from_value(spec).map_err(|e| CliError::Config(format!("sweep: {e}")))?;
    if spec.values.is_empty() {
        return Err(CliError::Config("sweep has no values".into()));
    }
    spec.values
        .iter()
        .enumerate()
        .map(|(k, val)| {
            let mut v = base.clone();
            v.as_object_mut().expect("config is an object").remove("sweep");
            set_path(&mut v, &spec.param, val.clone())?;
            set_path(&mut v, "output_dir", Value::String(out.join(format!("run_{k:03}")).display().to_string()))?;
            Ok((val.clone(), ExperimentConfig::from_value(v)?))
        })
        .collect()
}

pub fn run(base: &Value, out: &Path) -> CliResult<i32> {
    let runs = expand(base, out)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads()?)
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let rows: Vec<SweepRow> = pool.install(|| {
        runs.par_iter()
            .enumerate()
            .map(|(index, (value, cfg))| {
                let output_dir = cfg.output_dir.display().to_string();
                match execute(cfg) {
                    Ok((rep, _)) => SweepRow {
                        index,
                        value: value.clone(),
                        output_dir,
                        exit_code: exit_code(rep.event.kind),
                        event: Some(rep.event.kind.as_str().to_string()),
                        t_event: Some(rep.event.t_event),
                        error: None,
                    },
                    Err(e) => SweepRow {
                        index,
                        value: value.clone(),
                        output_dir,
                        exit_code: e.exit_code(),
                        event: None,
                        t_event: None,
                        error: Some(e.to_string()),
                    },
                }
            })
            .collect()
    });
    create_dir(out)?;
    write_json(&out.join("sweep_summary.json"), &rows)?;
    let mut csv = String::from("index,value,exit_code,event,t_event,output_dir\n");
    for r in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            r.index,
            r.value,
            r.exit_code,
            r.event.as_deref().unwrap_or("error"),
            r.t_event.map(imcf_core::json::format_f64).unwrap_or_default(),
            r.output_dir
        );
    }
    write(&out.join("sweep_summary.csv"), &csv)?;
    for r in &rows {
        println!("run {:>3} value {}: {}", r.index, r.value, r.event.as_deref().or(r.error.as_deref()).unwrap_or(""));
    }
    Ok(if rows.iter().any(|r| r.error.is_some()) { 1 } else { 0 })
}
