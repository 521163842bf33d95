//! Numerical laboratory for classical inverse mean curvature flow (IMCF).
//!
//! Surfaces are plane curves (`n = 1`) or generating profiles of
//! hypersurfaces of revolution about the x-axis (`n = 2`). The crate is
//! organised bottom-up:
//!
//! * [`geometry`]: profiles, resampling, curvature, area, diameter,
//!   inradius, self-intersection, distance fields.
//! * [`constructions`]: analytic fixtures, the quintic C² gluing and the
//!   handle dumbbell.
//! * [`flow`]: explicit time integration, radial-graph integration,
//!   arrival-time residuals and the avoidance check.
//! * [`diagnostics`]: reflection planes, star-shapedness, waiting time,
//!   gradient estimate and containment monitors.
//! * [`hull`]: minimal bridges between balls and outward-minimizing
//!   certificates.
//!
//! Heavy loops go through [`par::Exec`], which uses rayon when the
//! `parallel` feature is on and runs sequentially otherwise.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constructions;
pub mod diagnostics;
pub mod error;
pub mod flow;
pub mod geometry;
pub mod hull;
pub mod json;
pub mod par;

pub use error::{Error, Result};
pub use geometry::{ProfileCurve, ProfileSurface, Topology, Vec2};
