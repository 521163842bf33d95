use serde::Serialize;

use super::AuditRecord;
use crate::error::{Error, Result};
use crate::flow::FlowTrajectory;
use crate::geometry::{diameter, DistanceIndex, LocalGeometry, ProfileSurface, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GradientAudit {
    /// `max(|Dr| − rΛ/√(r² − Λ²))`; non-positive when the estimate holds.
    pub max_slack: f64,
    pub audited: usize,
    /// Samples outside the ball with `r <= Λ`.
    pub skipped: usize,
    pub ball_radius: f64,
}

/// Polar-graph slope audit for samples outside `B_{diam/2}(center)`,
/// where `diam` is the surface's own diameter. Slopes come from the
/// finite-difference normal: `|Dr| = r √(1 − ω²)/ω` with `ω = <ν, ∂_r>`.
pub fn gradient_estimate_audit(surface: &ProfileSurface, big_lambda: f64, center: Vec2) -> Result<GradientAudit> {
    let radius = 0.5 * diameter(surface).value;
    gradient_estimate_audit_with(surface, big_lambda, center, radius)
}

/// As [`gradient_estimate_audit`] with an explicit ball radius (samples
/// with `r >= radius − h` are audited).
pub fn gradient_estimate_audit_with(
    surface: &ProfileSurface,
    big_lambda: f64,
    center: Vec2,
    radius: f64,
) -> Result<GradientAudit> {
    let geo = LocalGeometry::compute(surface)?;
    let h = surface.spacing();
    let lam = big_lambda.max(0.0);
    let mut max_slack = f64::NEG_INFINITY;
    let mut audited = 0;
    let mut skipped = 0;
    for s in geo.iter() {
        let d = s.point - center;
        let r = d.norm();
        if r < radius - h {
            continue;
        }
        if r <= lam {
            skipped += 1;
            continue;
        }
        let omega = s.normal.dot(d) / r;
        if !(omega > 0.0) {
            return Err(Error::NotAGraph(format!(
                "support <ν, ∂_r> = {omega:e} at ({:.4}, {:.4})",
                s.point.x, s.point.y
            )));
        }
        let slope = r * (1.0 - omega * omega).max(0.0).sqrt() / omega;
        let bound = r * lam / (r * r - lam * lam).sqrt();
        max_slack = max_slack.max(slope - bound);
        audited += 1;
    }
    if audited == 0 {
        return Err(Error::PreconditionViolated(format!("no sample lies outside B_{radius}(center)")));
    }
    Ok(GradientAudit { max_slack, audited, skipped, ball_radius: radius })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContainmentFrame {
    pub t: f64,
    /// `R e^{t/n} − dist(x, N_t)` (negative inside, or +inf if `x ∉ E_t`).
    pub inner_slack: f64,
    /// `max |p − o| − e^{t/n} diam/2`.
    pub outer_slack: f64,
    pub tolerance: f64,
    pub inner_ok: bool,
    pub outer_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContainmentReport {
    pub frames: Vec<ContainmentFrame>,
    /// Radius `diam²/(2R)` of the escape ball.
    pub escape_radius: f64,
    /// First frame time with `B̄_{escape_radius}(o) ⊂ E_t`.
    pub escape_time: Option<f64>,
    pub all_ok: bool,
}

impl ContainmentReport {
    pub fn records(&self) -> Vec<AuditRecord> {
        let mut out = Vec::with_capacity(2 * self.frames.len());
        for f in &self.frames {
            out.push(AuditRecord::new("containment_inner", f.t, f.inner_slack, f.tolerance));
            out.push(AuditRecord::new("containment_outer", f.t, f.outer_slack, f.tolerance));
        }
        out
    }
}

/// Per-frame inner-ball and outer-ball containment with tolerance `h`
/// of each frame, plus the first time the escape ball is swallowed.
pub fn containment_monitor(
    traj: &FlowTrajectory,
    inner_center: Vec2,
    inradius: f64,
    outer_center: Vec2,
    diam: f64,
) -> ContainmentReport {
    let n = traj.n as f64;
    let escape_radius = diam * diam / (2.0 * inradius);
    let mut escape_time = None;
    let mut frames = Vec::with_capacity(traj.frames.len());
    for f in &traj.frames {
        let s = &f.surface;
        let h = s.spacing();
        let grow = (f.t / n).exp();
        let index = DistanceIndex::new(s);
        let inner_slack = if s.contains(inner_center) {
            inradius * grow - index.distance(inner_center)
        } else {
            f64::INFINITY
        };
        let far = s.points().map(|p| p.dist(outer_center)).fold(0.0, f64::max);
        let outer_slack = far - grow * 0.5 * diam;
        if escape_time.is_none() && s.contains(outer_center) && index.distance(outer_center) >= escape_radius {
            escape_time = Some(f.t);
        }
        frames.push(ContainmentFrame {
            t: f.t,
            inner_slack,
            outer_slack,
            tolerance: h,
            inner_ok: inner_slack <= h,
            outer_ok: outer_slack <= h,
        });
    }
    let all_ok = frames.iter().all(|f| f.inner_ok && f.outer_ok);
    ContainmentReport { frames, escape_radius, escape_time, all_ok }
}
