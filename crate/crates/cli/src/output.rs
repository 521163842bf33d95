use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use imcf_core::flow::{EventKind, FlowEvent, FlowTrajectory, Frame, FrameDiagnostics};
use imcf_core::geometry::Topology;
use imcf_core::json::{format_f64, to_string_compact, to_string_pretty};
use imcf_core::{ProfileCurve, ProfileSurface, Vec2};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const TRAJECTORY: &str = "trajectory.ndjson";
pub const RUN_CONFIG: &str = "run.json";

pub fn create_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

pub fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = to_string_pretty(value).map_err(|e| CliError::Config(e.to_string()))?;
    text.push('\n');
    write(path, &text)
}

#[derive(Debug, Serialize, Deserialize)]
struct CurveRecord {
    topology: String,
    points: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum Record {
    Frame { t: f64, diag: FrameDiagnostics, n: usize, curves: Vec<CurveRecord> },
    Event { kind: EventKind, t_event: f64, detail: String, steps: usize, first_intersection: Option<f64> },
}

fn frame_record(f: &Frame) -> Record {
    Record::Frame {
        t: f.t,
        diag: f.diag,
        n: f.surface.n(),
        curves: f
            .surface
            .curves()
            .iter()
            .map(|c| CurveRecord {
                topology: c.topology().as_str().to_string(),
                points: c.points().iter().map(|p| [p.x, p.y]).collect(),
            })
            .collect(),
    }
}

/// One JSON record per recorded frame, then one event record.
pub fn trajectory_ndjson(traj: &FlowTrajectory) -> String {
    let mut out = String::new();
    let ev = &traj.event;
    let records = traj.frames.iter().map(frame_record).chain(std::iter::once(Record::Event {
        kind: ev.kind,
        t_event: ev.t_event,
        detail: ev.detail.clone(),
        steps: traj.steps,
        first_intersection: traj.first_intersection,
    }));
    for r in records {
        out.push_str(&to_string_compact(&r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn read_trajectory(dir: &Path) -> CliResult<FlowTrajectory> {
    let path = dir.join(TRAJECTORY);
    if !path.is_file() {
        return Err(CliError::MissingRun(dir.to_path_buf()));
    }
    let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
    let bad = |line: usize, reason: String| CliError::MalformedFrame { path: path.clone(), line, reason };
    let mut frames = Vec::new();
    let mut event = None;
    let mut dim = None;
    for (k, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let rec: Record = serde_json::from_str(line).map_err(|e| bad(k + 1, e.to_string()))?;
        match rec {
            Record::Frame { t, diag, n, curves } => {
                if event.is_some() {
                    return Err(bad(k + 1, "frame after the event record".into()));
                }
                let curves = curves
                    .into_iter()
                    .map(|c| {
                        let topo = match c.topology.as_str() {
                            "closed" => Topology::Closed,
                            "anchored" => Topology::Anchored,
                            other => return Err(bad(k + 1, format!("unknown topology '{other}'"))),
                        };
                        let pts = c.points.iter().map(|p| Vec2::new(p[0], p[1])).collect();
                        ProfileCurve::new(pts, topo).map_err(|e| bad(k + 1, e.to_string()))
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                let surface = ProfileSurface::new(n, curves).map_err(|e| bad(k + 1, e.to_string()))?;
                dim = Some(n);
                frames.push(Frame { t, surface, diag });
            }
            Record::Event { kind, t_event, detail, steps, first_intersection } => {
                event = Some((
                    FlowEvent { kind, t_event, detail, intersection: None, min_h_sample: None },
                    steps,
                    first_intersection,
                ));
            }
        }
    }
    let (event, steps, first_intersection) = event.ok_or_else(|| bad(0, "missing event record".into()))?;
    let n = dim.ok_or_else(|| bad(0, "no frames".into()))?;
    Ok(FlowTrajectory { n, frames, event, steps, first_intersection, radial: Vec::new() })
}

pub fn frames_table(traj: &FlowTrajectory) -> String {
    let a0 = traj.frames[0].diag.area;
    let mut out = String::from("t,area,area_ratio,min_h,max_h,embedded\n");
    for f in &traj.frames {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            format_f64(f.t),
            format_f64(f.diag.area),
            format_f64(f.diag.area / (f.t.exp() * a0)),
            format_f64(f.diag.min_h),
            format_f64(f.diag.max_h),
            f.diag.embedded
        );
    }
    out
}

pub fn frame_file(dir: &Path, k: usize, ext: &str) -> PathBuf {
    dir.join(format!("frame_{k:05}.{ext}"))
}

/// Diagnostic circles drawn on a snapshot.
pub struct Circles {
    pub inner_center: Vec2,
    pub inner_radius: f64,
    pub outer_center: Vec2,
    pub outer_radius: f64,
}

/// Profile (and its mirror image for axisymmetric surfaces) with the
/// inner and outer containment circles.
pub fn snapshot_svg(s: &ProfileSurface, t: f64, circles: &Circles) -> String {
    let (mut lo, mut hi) = s.bounding_box();
    if s.is_axisymmetric() {
        lo.y = lo.y.min(-hi.y);
    }
    for (c, r) in [(circles.inner_center, circles.inner_radius), (circles.outer_center, circles.outer_radius)] {
        lo = Vec2::new(lo.x.min(c.x - r), lo.y.min(c.y - r));
        hi = Vec2::new(hi.x.max(c.x + r), hi.y.max(c.y + r));
    }
    let pad = 0.05 * (hi - lo).norm();
    let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
    let stroke = 0.003 * w.max(h);
    // y grows downward in SVG
    let map = |p: Vec2| format!("{:.6},{:.6}", p.x - lo.x + pad, hi.y + pad - p.y);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w:.6} {h:.6}\" width=\"800\" height=\"{:.0}\">\n",
        800.0 * h / w
    );
    let _ = writeln!(out, "<title>t = {t:.6}</title>");
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    for (c, r, color) in [
        (circles.inner_center, circles.inner_radius, "#2a7ab0"),
        (circles.outer_center, circles.outer_radius, "#c0392b"),
    ] {
        let center = map(c);
        let (cx, cy) = center.split_once(',').unwrap();
        let _ = writeln!(
            out,
            "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"{r:.6}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{stroke:.6}\" stroke-dasharray=\"{:.6}\"/>",
            4.0 * stroke
        );
    }
    let polyline = |pts: Vec<Vec2>, extra: &str| {
        let coords: Vec<String> = pts.into_iter().map(map).collect();
        format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{stroke:.6}\"{extra}/>\n",
            coords.join(" ")
        )
    };
    for c in s.curves() {
        let mut pts = c.points().to_vec();
        if c.is_closed() {
            pts.push(pts[0]);
        }
        if s.is_axisymmetric() {
            out.push_str(&polyline(pts.iter().map(|p| Vec2::new(p.x, -p.y)).collect(), " opacity=\"0.5\""));
        }
        out.push_str(&polyline(pts, ""));
    }
    if s.is_axisymmetric() {
        let _ = writeln!(
            out,
            "<line x1=\"0\" y1=\"{y:.6}\" x2=\"{w:.6}\" y2=\"{y:.6}\" stroke=\"gray\" stroke-width=\"{:.6}\"/>",
            0.5 * stroke,
            y = hi.y + pad
        );
    }
    out.push_str("</svg>\n");
    out
}
