use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use imcf_core::diagnostics::{
    containment_monitor, diameter_origin, direction_grid, first_star_time, gradient_estimate_audit_with,
    reflection_profile_about, t_star, AuditRecord, Plane, Raster,
};
use imcf_core::flow::{avoidance_check, FlowTrajectory};
use imcf_core::geometry::{diameter, inradius};
use imcf_core::par::Exec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{read_json, AuditSpec, ExperimentConfig};
use crate::error::{CliError, CliResult};
use crate::output::{read_trajectory, write, write_json, RUN_CONFIG};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The run does not reach the regime the audit is about.
    Inconclusive,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "N/A",
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AuditOutcome {
    pub name: &'static str,
    pub status: Status,
    pub summary: String,
    /// Largest `slack - tolerance` over the records.
    pub worst_margin: Option<f64>,
    pub records: Vec<AuditRecord>,
}

#[derive(Debug, Serialize)]
pub struct AuditReport {
    pub run: String,
    pub seed: u64,
    pub audits: Vec<AuditOutcome>,
    pub all_pass: bool,
}

fn outcome(name: &'static str, records: Vec<AuditRecord>, summary: String) -> AuditOutcome {
    let worst = records.iter().map(|r| r.slack - r.tolerance).fold(None, |a: Option<f64>, v| Some(a.map_or(v, |a| a.max(v))));
    let status = if records.iter().all(|r| r.pass) { Status::Pass } else { Status::Fail };
    AuditOutcome { name, status, summary, worst_margin: worst, records }
}

fn inconclusive(name: &'static str, summary: String) -> AuditOutcome {
    AuditOutcome { name, status: Status::Inconclusive, summary, worst_margin: None, records: Vec::new() }
}

fn failed(name: &'static str, summary: String) -> AuditOutcome {
    AuditOutcome { name, status: Status::Fail, summary, worst_margin: None, records: Vec::new() }
}

struct Context<'a> {
    traj: &'a FlowTrajectory,
    dt_frame: f64,
    seed: u64,
    inner: Option<&'a Path>,
}

fn admissibility(cx: &Context, directions: usize, offsets: usize, random: usize, stride: usize) -> CliResult<AuditOutcome> {
    let name = "admissibility-preservation";
    let s0 = &cx.traj.frames[0].surface;
    let (o, diam) = diameter_origin(s0);
    let h0 = s0.spacing();
    let raster0 = Raster::new(s0, Exec::default())?;
    let plane = |alpha: f64, rel: f64| {
        let base = Plane::at_angle(alpha, 0.0);
        Plane::at_angle(alpha, base.normal[0] * o.x + base.normal[1] * o.y + 0.5 * diam * rel)
    };
    let mut candidates = Vec::new();
    for alpha in direction_grid(s0.n(), directions) {
        for k in 0..offsets {
            candidates.push(plane(alpha, -1.0 + (2 * k + 1) as f64 / offsets as f64));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cx.seed);
    let max_alpha = if s0.n() == 1 { std::f64::consts::TAU } else { std::f64::consts::PI };
    for _ in 0..random {
        candidates.push(plane(rng.gen_range(0.0..max_alpha), rng.gen_range(-1.0..1.0)));
    }
    let total = candidates.len();
    let planes: Vec<Plane> = candidates.into_iter().filter(|p| raster0.admissibility(p, h0).admissible).collect();
    if planes.is_empty() {
        return Ok(inconclusive(name, format!("none of the {total} test planes is initially admissible")));
    }
    let last = cx.traj.frames.len() - 1;
    let mut records = Vec::new();
    for (k, f) in cx.traj.frames.iter().enumerate() {
        if k == 0 || (k % stride.max(1) != 0 && k != last) {
            continue;
        }
        let r = Raster::new(&f.surface, Exec::default())?;
        let worst = planes.iter().map(|p| r.violation(p)).fold(0.0, f64::max);
        records.push(AuditRecord::new("max_violation", f.t, worst, 2.0 * f.surface.spacing()));
    }
    Ok(outcome(name, records, format!("{} of {total} planes initially admissible; violation <= 2h", planes.len())))
}

fn gradient(cx: &Context, lambda: Option<f64>) -> CliResult<AuditOutcome> {
    let name = "gradient-estimate";
    let s0 = &cx.traj.frames[0].surface;
    let (o, diam) = diameter_origin(s0);
    let lambda = match lambda {
        Some(l) => l,
        None => {
            let count = if s0.n() == 1 { 64 } else { 16 };
            reflection_profile_about(s0, count, o, Exec::default())?.big_lambda.max(0.0)
        }
    };
    let mut records = Vec::new();
    for f in &cx.traj.frames {
        let h = f.surface.spacing();
        if f.surface.points().any(|p| (p - o).norm() < 0.5 * diam - h) {
            continue;
        }
        match gradient_estimate_audit_with(&f.surface, lambda, o, 0.5 * diam) {
            Ok(g) => records.push(AuditRecord::new("polar_slope", f.t, g.max_slack, 2.0 * h)),
            Err(e) => return Ok(failed(name, format!("t = {:.6}: {e}", f.t))),
        }
    }
    if records.is_empty() {
        return Ok(inconclusive(name, format!("no frame lies outside the ball of radius diam/2 = {:.6}", 0.5 * diam)));
    }
    Ok(outcome(name, records, format!("Λ = {lambda:.6}; slope bound r Λ / sqrt(r² - Λ²), allowance 2h")))
}

fn containment(cx: &Context) -> CliResult<AuditOutcome> {
    let s0 = &cx.traj.frames[0].surface;
    let ins = inradius(s0)?;
    let (o, diam) = diameter_origin(s0);
    let rep = containment_monitor(cx.traj, ins.center, ins.radius, o, diam);
    let escape = rep.escape_time.map_or("not swallowed".to_string(), |t| format!("swallowed at t = {t:.6}"));
    Ok(outcome(
        "containment",
        rep.records(),
        format!("inner R = {:.6}, outer diam/2 = {:.6}; escape ball {escape}", ins.radius, 0.5 * diam),
    ))
}

fn star_time(cx: &Context, dt_frame: Option<f64>) -> CliResult<AuditOutcome> {
    let name = "star-time";
    let s0 = &cx.traj.frames[0].surface;
    let ts = t_star(diameter(s0).value, inradius(s0)?.radius, cx.traj.n)?;
    let dt = dt_frame.unwrap_or(cx.dt_frame);
    match first_star_time(cx.traj) {
        Some(t) => Ok(outcome(
            name,
            vec![AuditRecord::new("t_first - t*", t, t - ts, dt)],
            format!("t_first = {t:.6}, t* = {ts:.6}, Δt = {dt}"),
        )),
        None if cx.traj.last().t >= ts + dt => {
            Ok(failed(name, format!("not star-shaped by t = {:.6} > t* + Δt = {:.6}", cx.traj.last().t, ts + dt)))
        }
        None => Ok(inconclusive(name, format!("run ends at t = {:.6} before t* = {ts:.6}", cx.traj.last().t))),
    }
}

fn area_growth(cx: &Context, tol: f64) -> AuditOutcome {
    let a0 = cx.traj.frames[0].diag.area;
    let records = cx
        .traj
        .frames
        .iter()
        .map(|f| AuditRecord::new("area_ratio", f.t, (f.diag.area / (f.t.exp() * a0) - 1.0).abs(), tol))
        .collect();
    outcome("area-growth", records, format!("|A(t) / (e^t A(0)) - 1| <= {tol}"))
}

fn avoidance(cx: &Context, inner: Option<&Path>) -> CliResult<AuditOutcome> {
    let name = "avoidance";
    let Some(dir) = inner.or(cx.inner) else {
        return Err(CliError::Config("the avoidance audit needs an inner run (--inner DIR)".into()));
    };
    let inner = read_trajectory(dir)?;
    let rep = match avoidance_check(cx.traj, &inner) {
        Ok(r) => r,
        Err(e) => return Ok(failed(name, e.to_string())),
    };
    let mut records: Vec<AuditRecord> = rep
        .times
        .windows(2)
        .zip(rep.ell.windows(2))
        .map(|(t, l)| AuditRecord::new("ell_decrease", t[1], l[0] - l[1], 1e-6))
        .collect();
    for (t, c) in rep.times.iter().zip(&rep.contained) {
        records.push(AuditRecord::new("inner_outside", *t, if *c { 0.0 } else { 1.0 }, 0.0));
    }
    Ok(outcome(
        name,
        records,
        format!("{} shared frames, min ℓ increment {:.3e}", rep.times.len(), rep.min_increment),
    ))
}

fn run_one(cx: &Context, spec: &AuditSpec) -> CliResult<AuditOutcome> {
    match spec {
        AuditSpec::AdmissibilityPreservation { directions, offsets, random_planes, stride } => {
            admissibility(cx, *directions, *offsets, *random_planes, *stride)
        }
        AuditSpec::GradientEstimate { lambda } => gradient(cx, *lambda),
        AuditSpec::Containment => containment(cx),
        AuditSpec::StarTime { dt_frame } => star_time(cx, *dt_frame),
        AuditSpec::AreaGrowth { tolerance } => Ok(area_growth(cx, *tolerance)),
        AuditSpec::Avoidance { inner } => avoidance(cx, inner.as_deref()),
    }
}

pub fn table(report: &AuditReport) -> String {
    let mut out = format!("run: {}\n", report.run);
    let _ = writeln!(out, "{:<28} {:<6} {:>7} {:>14}  summary", "audit", "status", "checks", "max slack-tol");
    for a in &report.audits {
        let margin = a.worst_margin.map_or("-".to_string(), |m| format!("{m:.6e}"));
        let _ = writeln!(
            out,
            "{:<28} {:<6} {:>7} {:>14}  {}",
            a.name,
            a.status.as_str(),
            a.records.len(),
            margin,
            a.summary
        );
    }
    let _ = writeln!(out, "overall: {}", if report.all_pass { "PASS" } else { "FAIL" });
    out
}

/// Options of the audit command beyond the experiment config.
pub struct AuditArgs {
    pub run: PathBuf,
    pub inner: Option<PathBuf>,
    pub audits: Option<Vec<AuditSpec>>,
    /// Audits and seed from an explicit config file.
    pub config: Option<ExperimentConfig>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

pub fn run(args: &AuditArgs) -> CliResult<i32> {
    let traj = read_trajectory(&args.run)?;
    let run_cfg_path = args.run.join(RUN_CONFIG);
    let run_cfg = if run_cfg_path.is_file() {
        Some(ExperimentConfig::from_value(read_json(&run_cfg_path)?)?)
    } else {
        None
    };
    let cfg = args.config.as_ref().or(run_cfg.as_ref());
    let specs = match (&args.audits, cfg) {
        (Some(a), _) => a.clone(),
        (None, Some(c)) if !c.audits.is_empty() => c.audits.clone(),
        _ => {
            let mut all = AuditSpec::all();
            if args.inner.is_some() {
                all.push(AuditSpec::Avoidance { inner: None });
            }
            all
        }
    };
    let dt_frame = cfg.map(|c| c.flow.record_every).unwrap_or_else(|| match traj.frames.as_slice() {
        [a, b, ..] => b.t - a.t,
        _ => 0.0,
    });
    let seed = args.seed.or(cfg.map(|c| c.seed)).unwrap_or(0);
    let cx = Context { traj: &traj, dt_frame, seed, inner: args.inner.as_deref() };
    let audits = specs.iter().map(|s| run_one(&cx, s)).collect::<CliResult<Vec<_>>>()?;
    let all_pass = audits.iter().all(|a| a.status != Status::Fail);
    let report = AuditReport { run: args.run.display().to_string(), seed, audits, all_pass };
    let dir = args.out.clone().unwrap_or_else(|| args.run.clone());
    crate::output::create_dir(&dir)?;
    write_json(&dir.join("audit_report.json"), &report)?;
    let text = table(&report);
    write(&dir.join("audit_report.txt"), &text)?;
    print!("{text}");
    Ok(if all_pass { 0 } else { 1 })
}
