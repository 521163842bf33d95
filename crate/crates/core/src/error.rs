use thiserror::Error;

use crate::geometry::Vec2;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("axis singularity at curve {curve}, sample {index} (f = {f:e})")]
    AxisSingularity { curve: usize, index: usize, f: f64 },
    #[error("surface is not embedded: {0}")]
    NotEmbedded(String),
    #[error("degenerate gluing interval: eps = {0}")]
    DegenerateInterval(f64),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("not mean convex: {condition} fails at {location} (value {value:e})")]
    NotMeanConvex {
        condition: String,
        location: String,
        value: f64,
    },
    #[error("gluing zones overlap: {0}")]
    GluingOverlap(String),
    #[error("cannot satisfy gluing constraints: {0}")]
    CannotSatisfy(String),
    #[error("time step {dt:e} exceeds stability bound {bound:e}")]
    StabilityViolation { dt: f64, bound: f64 },
    #[error("radial graph lost star shape at sample {index}: {reason}")]
    LostStarShape { index: usize, reason: String },
    #[error("trajectory frames do not foliate: {0}")]
    NotFoliated(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("center {0:?} is not enclosed by the surface")]
    CenterOutside(Vec2),
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("outer portion is not a polar graph: {0}")]
    NotAGraph(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("dumbbell touches the bridge zone: {0}")]
    HullTouched(String),
    #[error("parse error: {0}")]
    Parse(String),
}
