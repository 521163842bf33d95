use serde::Serialize;

use super::{hull_two_balls_with_bridge, HullResult, TOL_AREA};
use crate::constructions::Dumbbell;
use crate::error::{Error, Result};
use crate::geometry::{DistanceIndex, Vec2};

/// Hull certificate for a built dumbbell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DumbbellHullAudit {
    /// Two-ball comparison (bells only).
    pub two_ball: HullResult,
    /// Distance between the bridge and the non-spherical parts, minus the
    /// sampling step; `None` without a bridge.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clearance: Option<f64>,
    pub dumbbell_area: f64,
    /// Boundary area of the dumbbell with the region under the bridge added.
    pub comparison_area: f64,
    /// `false` certifies that the dumbbell is not strictly outward minimizing.
    pub is_strictly: bool,
    pub is_outward_minimizing: bool,
}

/// Compare the dumbbell with the body obtained by adding the region
/// between its bells under the two-ball bridge.
///
/// The comparison body's boundary trades the gap-facing caps for the
/// bridge, so its area differs from the dumbbell's by exactly the two-ball
/// margin, provided no part of the dumbbell other than the kept spheres
/// reaches the bridge zone.
pub fn audit_dumbbell_hull(db: &Dumbbell) -> Result<DumbbellHullAudit> {
    let spec = db.spec;
    let (two_ball, bridge) = hull_two_balls_with_bridge(spec.radius, spec.radius, spec.d, 2)?;
    let dumbbell_area = db.report.area;
    let Some(bridge) = bridge else {
        return Ok(DumbbellHullAudit {
            two_ball,
            clearance: None,
            dumbbell_area,
            comparison_area: dumbbell_area,
            is_strictly: true,
            is_outward_minimizing: true,
        });
    };

    let s_attach = -spec.radius * bridge.attach_right.cos();
    if !(s_attach < db.bell.junction) {
        return Err(Error::HullTouched(format!(
            "bridge attaches at s = {s_attach}, on the flare that starts at s = {}",
            db.bell.junction
        )));
    }

    let ds = 0.01 * spec.r.min(spec.radius);
    let pts = db.non_spherical_meridian(ds);
    let segs: Vec<(Vec2, Vec2)> = bridge
        .x
        .windows(2)
        .zip(bridge.f.windows(2))
        .map(|(x, f)| (Vec2::new(x[0], f[0]), Vec2::new(x[1], f[1])))
        .collect();
    let index = DistanceIndex::from_segments(segs);
    let (bx0, bx1) = (bridge.x_left(), bridge.x_right());
    let by1 = bridge.max_radius();
    let mut clearance = f64::INFINITY;
    for p in pts {
        let gx = (bx0 - p.x).max(p.x - bx1).max(0.0);
        let gy = (p.y - by1).max(0.0);
        if gx.hypot(gy) > clearance {
            continue;
        }
        let d = index.distance(p);
        let under = bridge.height_at(p.x).is_some_and(|h| p.y <= h);
        clearance = clearance.min(if under { -d } else { d });
    }
    let clearance = clearance - ds;
    if !(clearance > 0.0) {
        return Err(Error::HullTouched(format!("clearance {clearance:e} to the bridge")));
    }

    let comparison_area = dumbbell_area + two_ball.margin;
    let tol = TOL_AREA * dumbbell_area;
    Ok(DumbbellHullAudit {
        clearance: Some(clearance),
        dumbbell_area,
        comparison_area,
        is_strictly: comparison_area > dumbbell_area + tol,
        is_outward_minimizing: comparison_area >= dumbbell_area - tol,
        two_ball,
    })
}
