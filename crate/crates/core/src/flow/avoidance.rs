use serde::Serialize;

use super::FlowTrajectory;
use crate::error::{Error, Result};
use crate::geometry::{DistanceIndex, ProfileSurface};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AvoidanceReport {
    /// Frame times shared by both trajectories.
    pub times: Vec<f64>,
    /// `ℓ(t)`: squared distance between the two surfaces.
    pub ell: Vec<f64>,
    /// Minimum of `ℓ(t_{k+1}) − ℓ(t_k)`.
    pub min_increment: f64,
    /// Whether the inner region lies inside the outer one at each frame.
    pub contained: Vec<bool>,
    pub all_contained: bool,
}

fn distance_between(a: &ProfileSurface, b: &ProfileSurface) -> f64 {
    let ia = DistanceIndex::new(a);
    let ib = DistanceIndex::new(b);
    let ab = a.points().map(|p| ib.distance(p)).fold(f64::INFINITY, f64::min);
    let ba = b.points().map(|p| ia.distance(p)).fold(f64::INFINITY, f64::min);
    ab.min(ba)
}

fn inside(inner: &ProfileSurface, outer: &ProfileSurface) -> bool {
    inner.points().all(|p| outer.contains(p)) && distance_between(inner, outer) > 0.0
}

/// Track `ℓ(t) = dist²(N_t, Ñ_t)` over the frames both runs recorded
/// (times matched to 1e-9).
pub fn avoidance_check(outer: &FlowTrajectory, inner: &FlowTrajectory) -> Result<AvoidanceReport> {
    let o0 = &outer.frames[0].surface;
    let i0 = &inner.frames[0].surface;
    if !inside(i0, o0) {
        return Err(Error::PreconditionViolated(
            "inner initial surface is not strictly inside the outer region".into(),
        ));
    }
    let mut times = Vec::new();
    let mut ell = Vec::new();
    let mut contained = Vec::new();
    let mut j = 0;
    for fo in &outer.frames {
        while j < inner.frames.len() && inner.frames[j].t < fo.t - 1e-9 {
            j += 1;
        }
        if j == inner.frames.len() {
            break;
        }
        let fi = &inner.frames[j];
        if (fi.t - fo.t).abs() > 1e-9 {
            continue;
        }
        let d = distance_between(&fo.surface, &fi.surface);
        times.push(fo.t);
        ell.push(d * d);
        contained.push(inside(&fi.surface, &fo.surface));
    }
    let min_increment = ell.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let all_contained = contained.iter().all(|&c| c);
    Ok(AvoidanceReport { times, ell, min_increment, contained, all_contained })
}
