use std::path::Path;

use imcf_core::diagnostics::{diameter_origin, t_star};
use imcf_core::flow::{run as run_flow, run_radial_graph, EventKind, FlowTrajectory};
use imcf_core::geometry::{diameter, inradius, io::write_profile};
use serde::Serialize;

use crate::config::{ExperimentConfig, Scheme};
use crate::error::CliResult;
use crate::output::{
    create_dir, frame_file, frames_table, snapshot_svg, trajectory_ndjson, write, write_json, Circles, RUN_CONFIG,
    TRAJECTORY,
};

#[derive(Debug, Serialize)]
pub struct InitialMetrics {
    pub area: f64,
    pub diameter: f64,
    pub inradius: f64,
    pub inradius_center: [f64; 2],
    pub t_star: f64,
}

#[derive(Debug, Serialize)]
pub struct FinalFrame {
    pub t: f64,
    pub area: f64,
    pub area_ratio: f64,
    pub min_h: f64,
    pub max_h: f64,
    /// Mean and max distance of the samples from the initial inradius center.
    pub mean_radius: f64,
    pub max_radius: f64,
}

#[derive(Debug, Serialize)]
pub struct EventSummary {
    pub kind: EventKind,
    pub t_event: f64,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct FlowReport {
    pub n: usize,
    pub scheme: Scheme,
    pub steps: usize,
    pub frames: usize,
    pub event: EventSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_intersection: Option<f64>,
    pub initial: InitialMetrics,
    pub two_t_star: f64,
    pub deadline_met: Option<bool>,
    pub verdict: String,
    #[serde(rename = "final")]
    pub last: FinalFrame,
}

pub fn exit_code(kind: EventKind) -> i32 {
    match kind {
        EventKind::Completed => 0,
        EventKind::SingularityDetected => 10,
        EventKind::SelfIntersection => 11,
        EventKind::StoppedMaxSteps => 12,
    }
}

/// Deadline check: every embedded mean-convex flow must become
/// star-shaped or stop (singularity or intersection) before `2 t*`.
fn verdict(traj: &FlowTrajectory, two_t_star: f64) -> (Option<bool>, String) {
    let ev = &traj.event;
    match ev.kind {
        EventKind::SingularityDetected | EventKind::SelfIntersection => {
            let met = ev.t_event < two_t_star;
            let word = if met { "before" } else { "after" };
            (Some(met), format!("{} at t = {:.6}, {word} 2t* = {:.6}", ev.kind.as_str(), ev.t_event, two_t_star))
        }
        _ if traj.last().t >= two_t_star => (
            Some(true),
            format!("no event up to t = {:.6} >= 2t* = {:.6}", traj.last().t, two_t_star),
        ),
        _ => (
            None,
            format!("run ended at t = {:.6} before 2t* = {:.6}; deadline not reached", traj.last().t, two_t_star),
        ),
    }
}

/// Run the configured flow into `cfg.output_dir`; returns the event exit code.
pub fn run(cfg: &ExperimentConfig) -> CliResult<i32> {
    let (report, _) = execute(cfg)?;
    println!("{}", report.verdict);
    Ok(exit_code(report.event.kind))
}

pub fn execute(cfg: &ExperimentConfig) -> CliResult<(FlowReport, FlowTrajectory)> {
    let built = cfg.shape.build(cfg.flow.m)?;
    let traj = match (cfg.scheme, &built.radial) {
        (Scheme::Radial, Some(g)) => run_radial_graph(g, &cfg.flow)?,
        _ => run_flow(&built.surface, &cfg.flow)?,
    };
    let s0 = &traj.frames[0].surface;
    let (deadline_diam, deadline_r) = built.deadline_metrics()?;
    let ts = t_star(deadline_diam, deadline_r, traj.n)?;
    let ins = inradius(s0)?;
    let (origin, diam) = diameter_origin(s0);

    let dir = &cfg.output_dir;
    create_dir(dir)?;
    write_json(&dir.join(RUN_CONFIG), cfg)?;
    write(&dir.join(TRAJECTORY), &trajectory_ndjson(&traj))?;
    write(&dir.join("frames.csv"), &frames_table(&traj))?;
    write_frames(dir, cfg, &traj, ins.center, ins.radius, origin, diam)?;

    let last = traj.last();
    let dists: Vec<f64> = last.surface.points().map(|p| (p - ins.center).norm()).collect();
    let (two_t_star, (deadline_met, verdict)) = (2.0 * ts, verdict(&traj, 2.0 * ts));
    let report = FlowReport {
        n: traj.n,
        scheme: cfg.scheme,
        steps: traj.steps,
        frames: traj.frames.len(),
        event: EventSummary { kind: traj.event.kind, t_event: traj.event.t_event, detail: traj.event.detail.clone() },
        first_intersection: traj.first_intersection,
        initial: InitialMetrics {
            area: traj.frames[0].diag.area,
            diameter: diameter(s0).value,
            inradius: ins.radius,
            inradius_center: [ins.center.x, ins.center.y],
            t_star: ts,
        },
        two_t_star,
        deadline_met,
        verdict,
        last: FinalFrame {
            t: last.t,
            area: last.diag.area,
            area_ratio: last.diag.area / (last.t.exp() * traj.frames[0].diag.area),
            min_h: last.diag.min_h,
            max_h: last.diag.max_h,
            mean_radius: dists.iter().sum::<f64>() / dists.len() as f64,
            max_radius: dists.iter().copied().fold(0.0, f64::max),
        },
    };
    write_json(&dir.join("flow_report.json"), &report)?;
    Ok((report, traj))
}

fn write_frames(
    dir: &Path,
    cfg: &ExperimentConfig,
    traj: &FlowTrajectory,
    inner_center: imcf_core::Vec2,
    inner_radius: f64,
    outer_center: imcf_core::Vec2,
    diam: f64,
) -> CliResult<()> {
    let (frames_dir, svg_dir) = (dir.join("frames"), dir.join("snapshots"));
    create_dir(&frames_dir)?;
    create_dir(&svg_dir)?;
    let n = traj.n as f64;
    let last = traj.frames.len() - 1;
    for (k, f) in traj.frames.iter().enumerate() {
        write(&frame_file(&frames_dir, k, "csv"), &write_profile(&f.surface))?;
        if k % cfg.svg_every == 0 || k == last {
            let g = (f.t / n).exp();
            let circles = Circles {
                inner_center,
                inner_radius: inner_radius * g,
                outer_center,
                outer_radius: 0.5 * diam * g,
            };
            write(&frame_file(&svg_dir, k, "svg"), &snapshot_svg(&f.surface, f.t, &circles))?;
        }
    }
    Ok(())
}
