//! Classical inverse mean curvature flow: every point moves with normal
//! speed `1/H`.
//!
//! [`run`] integrates profile surfaces with an explicit Heun scheme,
//! periodic arclength resampling and event detection; [`run_radial_graph`]
//! integrates the scalar equation for star-shaped graphs `r(θ)`.
//! [`arrival_time_residual`] and [`avoidance_check`] audit trajectories.

mod arrival;
mod avoidance;
mod radial;
mod stepper;

pub use arrival::{arrival_field, arrival_time_residual, arrival_time_residual_with, ArrivalField, ResidualStats};
pub use avoidance::{avoidance_check, AvoidanceReport};
pub use radial::{radial_velocity, run_radial_graph};
pub use stepper::{run, stable_dt, step, step_with, FlowConfig};

use serde::{Deserialize, Serialize};

use crate::geometry::{IntersectionReport, ProfileSurface, RadialGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventKind {
    Completed,
    SingularityDetected,
    SelfIntersection,
    StoppedMaxSteps,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Completed => "Completed",
            EventKind::SingularityDetected => "SingularityDetected",
            EventKind::SelfIntersection => "SelfIntersection",
            EventKind::StoppedMaxSteps => "StoppedMaxSteps",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowEvent {
    pub kind: EventKind,
    pub t_event: f64,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection: Option<IntersectionReport>,
    /// Sample `(curve, index)` with the smallest mean curvature at the event.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_h_sample: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameDiagnostics {
    pub area: f64,
    pub min_h: f64,
    pub max_h: f64,
    pub embedded: bool,
}

#[derive(Debug, Clone)]
pub struct Frame {
    pub t: f64,
    pub surface: ProfileSurface,
    pub diag: FrameDiagnostics,
}

#[derive(Debug, Clone)]
pub struct FlowTrajectory {
    pub n: usize,
    pub frames: Vec<Frame>,
    pub event: FlowEvent,
    pub steps: usize,
    /// First time a self-intersection was seen when the run was allowed to continue.
    pub first_intersection: Option<f64>,
    /// Radial states at the recorded frames (radial-graph runs only).
    pub radial: Vec<RadialGraph>,
}

impl FlowTrajectory {
    pub fn last(&self) -> &Frame {
        self.frames.last().expect("trajectory has frames")
    }

    pub fn times(&self) -> Vec<f64> {
        self.frames.iter().map(|f| f.t).collect()
    }
}
