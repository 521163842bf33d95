use serde::{Deserialize, Serialize};

use super::{EventKind, FlowEvent, FlowTrajectory, Frame, FrameDiagnostics};
use crate::error::{Error, Result};
use crate::geometry::{
    area, diameter, resample_arclength, self_intersects_with, LocalGeometry, ProfileSurface, Vec2,
};
use crate::par::Exec;

/// Largest admissible `cfl` factor.
pub const CFL_MAX: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FlowConfig {
    pub t_end: f64,
    pub cfl: f64,
    /// Singularity threshold on min H; default `1e-3 * (initial min H)`.
    pub eps_h: Option<f64>,
    /// Curvature blow-up threshold; default `1e4 / diam`.
    pub kappa_max: Option<f64>,
    pub resample_every: usize,
    pub record_every: f64,
    pub m: usize,
    pub max_steps: usize,
    /// Heun (RK2) correction; forward Euler when off.
    pub rk2: bool,
    /// Stop at the first self-intersection; when off the run continues and
    /// only records the time.
    pub halt_on_intersection: bool,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            t_end: 1.0,
            cfl: 0.25,
            eps_h: None,
            kappa_max: None,
            resample_every: 10,
            record_every: 0.01,
            m: 512,
            max_steps: 5_000_000,
            rk2: true,
            halt_on_intersection: true,
        }
    }
}

impl FlowConfig {
    /// Time of the `k`-th recorded frame, snapped to `t_end` when within
    /// rounding of it.
    pub fn record_time(&self, k: usize) -> f64 {
        let t = k as f64 * self.record_every;
        if t > self.t_end - 1e-9 * self.record_every {
            self.t_end
        } else {
            t
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl <= CFL_MAX) {
            return Err(Error::InvalidParams(format!("cfl = {} must lie in (0, 0.5]", self.cfl)));
        }
        if !(self.t_end > 0.0) || !(self.record_every > 0.0) {
            return Err(Error::InvalidParams("t_end and record_every must be positive".into()));
        }
        if self.eps_h.is_some_and(|e| !(e > 0.0)) {
            return Err(Error::InvalidParams("eps_H must be positive".into()));
        }
        if self.resample_every == 0 || self.m < 16 {
            return Err(Error::InvalidParams("resample_every must be >= 1 and m >= 16".into()));
        }
        Ok(())
    }
}

/// Explicit stability bound `cfl * h_min^2 * (min H)^2`: the linearized
/// normal displacement diffuses with coefficient `1/H^2`.
pub fn stable_dt(surface: &ProfileSurface, min_h: f64, cfl: f64) -> f64 {
    let h = surface.min_spacing();
    cfl * h * h * min_h * min_h
}

/// Normal velocity `ν/H` at every sample, or the sample where `H <= 0`.
fn velocity(surface: &ProfileSurface) -> Result<(Vec<Vec<Vec2>>, LocalGeometry)> {
    let geo = LocalGeometry::compute(surface)?;
    let mut out = Vec::with_capacity(geo.curves.len());
    for (ci, c) in geo.curves.iter().enumerate() {
        let mut v = Vec::with_capacity(c.len());
        for (i, s) in c.iter().enumerate() {
            if !(s.h > 0.0) {
                return Err(Error::NotMeanConvex {
                    condition: "H > 0".into(),
                    location: format!("curve {ci}, sample {i}"),
                    value: s.h,
                });
            }
            v.push(s.normal / s.h);
        }
        out.push(v);
    }
    Ok((out, geo))
}

fn displaced(surface: &ProfileSurface, vel: &[Vec<Vec2>], dt: f64) -> ProfileSurface {
    let mut next = surface.clone();
    let axisym = surface.is_axisymmetric();
    for (c, v) in next.curves_mut().iter_mut().zip(vel) {
        let anchored = c.topology() == crate::geometry::Topology::Anchored;
        let pts = c.points_mut();
        let m = pts.len();
        for (i, (p, w)) in pts.iter_mut().zip(v).enumerate() {
            *p += *w * dt;
            if axisym && anchored && (i == 0 || i == m - 1) {
                p.y = 0.0;
            }
        }
    }
    next
}

/// One step of size `dt` with the default options (Heun, `cfl <= 0.5`).
pub fn step(surface: &ProfileSurface, dt: f64) -> Result<ProfileSurface> {
    step_with(surface, dt, CFL_MAX, true)
}

/// One explicit step; `StabilityViolation` if `dt` exceeds the bound for `cfl`.
pub fn step_with(surface: &ProfileSurface, dt: f64, cfl: f64, rk2: bool) -> Result<ProfileSurface> {
    let (k1, geo) = velocity(surface)?;
    let bound = stable_dt(surface, geo.min_h(), cfl);
    if dt > bound {
        return Err(Error::StabilityViolation { dt, bound });
    }
    let predictor = displaced(surface, &k1, dt);
    if !rk2 {
        return Ok(predictor);
    }
    let (k2, _) = velocity(&predictor)?;
    let avg: Vec<Vec<Vec2>> = k1
        .iter()
        .zip(&k2)
        .map(|(a, b)| a.iter().zip(b).map(|(u, w)| (*u + *w) * 0.5).collect())
        .collect();
    Ok(displaced(surface, &avg, dt))
}

fn diagnostics(surface: &ProfileSurface, geo: &LocalGeometry, tol: f64) -> FrameDiagnostics {
    FrameDiagnostics {
        area: area(surface),
        min_h: geo.min_h(),
        max_h: geo.max_h(),
        embedded: self_intersects_with(surface.curves(), surface.n(), tol, Exec::Sequential).is_none(),
    }
}

/// Integrate from `surface` until `t_end` or an event.
pub fn run(surface: &ProfileSurface, config: &FlowConfig) -> Result<FlowTrajectory> {
    config.validate()?;
    let mut cur = resample_arclength(surface, config.m)?;
    let geo0 = LocalGeometry::compute(&cur)?;
    let h0 = geo0.min_h();
    if !(h0 > 0.0) {
        return Err(Error::PreconditionViolated(format!("initial min H = {h0:e} is not positive")));
    }
    let tol0 = 0.25 * cur.spacing();
    if let Some(rep) = self_intersects_with(cur.curves(), cur.n(), tol0, Exec::default()) {
        return Err(Error::NotEmbedded(format!("initial surface: {:?} at {:?}", rep.kind, rep.location)));
    }
    let eps_h = config.eps_h.unwrap_or(1e-3 * h0);
    let kappa_max = config.kappa_max.unwrap_or(1e4 / diameter(&cur).value);

    let mut frames = vec![Frame {
        t: 0.0,
        diag: diagnostics(&cur, &geo0, tol0),
        surface: cur.clone(),
    }];
    let mut t = 0.0;
    let mut steps = 0usize;
    let mut record_k = 1usize;
    let mut next_record = config.record_time(record_k);
    let mut first_intersection = None;
    let mut geo = geo0;

    let event = loop {
        if steps >= config.max_steps {
            break FlowEvent {
                kind: EventKind::StoppedMaxSteps,
                t_event: t,
                detail: format!("max_steps = {} reached", config.max_steps),
                intersection: None,
                min_h_sample: None,
            };
        }
        let mut dt = stable_dt(&cur, geo.min_h(), config.cfl);
        let target = next_record;
        let mut landing = false;
        if t + dt >= target - 1e-12 * target.max(1.0) {
            dt = target - t;
            landing = true;
        }
        let next = match step_with(&cur, dt, config.cfl, config.rk2) {
            Ok(s) => s,
            Err(Error::NotMeanConvex { location, value, .. }) => {
                break FlowEvent {
                    kind: EventKind::SingularityDetected,
                    t_event: t,
                    detail: format!("H = {value:e} at {location} inside a step"),
                    intersection: None,
                    min_h_sample: Some(geo.argmin_h()),
                };
            }
            Err(e) => return Err(e),
        };
        steps += 1;
        t = if landing { target } else { t + dt };
        cur = if steps.is_multiple_of(config.resample_every) {
            resample_arclength(&next, config.m)?
        } else {
            next
        };
        geo = match LocalGeometry::compute(&cur) {
            Ok(g) => g,
            Err(Error::AxisSingularity { curve, index, f }) => {
                break FlowEvent {
                    kind: EventKind::SelfIntersection,
                    t_event: t,
                    detail: format!("curve {curve} sample {index} reached the axis (f = {f:e})"),
                    intersection: None,
                    min_h_sample: None,
                };
            }
            Err(e) => return Err(e),
        };
        let min_h = geo.min_h();
        let tol = 0.25 * cur.spacing();
        let hit = self_intersects_with(cur.curves(), cur.n(), tol, Exec::Sequential);
        let recording = landing;
        let mut event = None;
        if min_h <= eps_h {
            event = Some(FlowEvent {
                kind: EventKind::SingularityDetected,
                t_event: t,
                detail: format!("min H = {min_h:e} <= eps_H = {eps_h:e}"),
                intersection: None,
                min_h_sample: Some(geo.argmin_h()),
            });
        } else if geo.max_abs_kappa() >= kappa_max {
            event = Some(FlowEvent {
                kind: EventKind::SingularityDetected,
                t_event: t,
                detail: format!("max |kappa| = {:e} >= kappa_max = {kappa_max:e}", geo.max_abs_kappa()),
                intersection: None,
                min_h_sample: Some(geo.argmin_h()),
            });
        } else if let Some(rep) = hit {
            if first_intersection.is_none() {
                first_intersection = Some(t);
            }
            if config.halt_on_intersection {
                event = Some(FlowEvent {
                    kind: EventKind::SelfIntersection,
                    t_event: t,
                    detail: format!("{:?} at ({:e}, {:e})", rep.kind, rep.location.x, rep.location.y),
                    intersection: Some(rep),
                    min_h_sample: None,
                });
            }
        }
        let completed = event.is_none() && landing && t == config.t_end;
        if recording || event.is_some() || completed {
            frames.push(Frame {
                t,
                diag: FrameDiagnostics {
                    area: area(&cur),
                    min_h,
                    max_h: geo.max_h(),
                    embedded: hit.is_none(),
                },
                surface: cur.clone(),
            });
            if recording {
                record_k += 1;
                next_record = config.record_time(record_k);
            }
        }
        if let Some(e) = event {
            break e;
        }
        if completed {
            break FlowEvent {
                kind: EventKind::Completed,
                t_event: config.t_end,
                detail: String::new(),
                intersection: None,
                min_h_sample: None,
            };
        }
    };

    Ok(FlowTrajectory {
        n: cur.n(),
        frames,
        event,
        steps,
        first_intersection,
        radial: Vec::new(),
    })
}
