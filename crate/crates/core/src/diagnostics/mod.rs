//! Certificates evaluated on surfaces and trajectories: reflection
//! admissibility and the constant Λ, star-shapedness and the waiting time
//! `t*`, the polar-graph gradient estimate, and ball containment.
//!
//! Audits report violations instead of failing; [`AuditRecord`] is the
//! row format shared with the command-line front end.

mod estimates;
mod reflection;
mod star;

pub use estimates::{
    containment_monitor, gradient_estimate_audit, gradient_estimate_audit_with, ContainmentFrame,
    ContainmentReport, GradientAudit,
};
pub use reflection::{
    direction_grid, is_admissible, reflection_profile, reflection_profile_about, Admissibility, Plane, Raster,
    ReflectionProfile,
};
pub use star::{diameter_origin, first_star_time, is_star_shaped, is_star_shaped_with, t_star, StarReport};

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditRecord {
    pub check: String,
    pub frame_t: f64,
    pub slack: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl AuditRecord {
    /// A record passes when `slack <= tolerance`.
    pub fn new(check: &str, frame_t: f64, slack: f64, tolerance: f64) -> Self {
        Self { check: check.to_string(), frame_t, slack, tolerance, pass: slack <= tolerance }
    }
}
