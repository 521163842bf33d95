//! Outward-minimizing certificates for axisymmetric bodies.
//!
//! The hull of two balls is sought in the cap-and-bridge ansatz: the balls'
//! outer caps plus a minimal hypersurface of revolution tangent to both.
//! The bridge is found by shooting the ODE `f'' = (n-1)(1 + f'^2)/f` from
//! a trial latitude on the left sphere and matching tangency on the right.

mod audit;
mod bridge;

pub use audit::{audit_dumbbell_hull, DumbbellHullAudit};
pub use bridge::{minimal_bridge, BridgeProfile, CatenoidFit};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::unit_sphere_area;
use crate::par::Exec;

/// Relative area tolerance of the outward-minimizing verdict.
pub const TOL_AREA: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HullResult {
    /// Area of the cap-and-bridge candidate (the body area when no bridge exists).
    pub hull_area: f64,
    pub body_area: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bridge: Option<BridgeSummary>,
    pub is_outward_minimizing: bool,
    pub is_strictly: bool,
    /// `hull_area - body_area`.
    pub margin: f64,
    /// The bridge lies inside the slab between the ball centers.
    pub slab_ok: bool,
    /// The bridge stays inside the cylinder of radius max(R).
    pub cylinder_ok: bool,
}

/// Scalar view of a bridge for reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BridgeSummary {
    pub x_left: f64,
    pub x_right: f64,
    pub attach_left: f64,
    pub attach_right: f64,
    pub max_radius: f64,
    pub area: f64,
    pub h_residual: f64,
    pub tangency_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catenoid_deviation: Option<f64>,
}

impl From<&BridgeProfile> for BridgeSummary {
    fn from(b: &BridgeProfile) -> Self {
        Self {
            x_left: b.x_left(),
            x_right: b.x_right(),
            attach_left: b.attach_left,
            attach_right: b.attach_right,
            max_radius: b.max_radius(),
            area: b.area(),
            h_residual: b.h_residual,
            tangency_residual: b.tangency_residual,
            catenoid_deviation: b.catenoid.map(|c| c.max_deviation),
        }
    }
}

/// Hull comparison for two equal balls of radius `radius` with gap `d`.
pub fn hull_two_balls(radius: f64, d: f64, n: usize) -> Result<HullResult> {
    Ok(hull_two_balls_with_bridge(radius, radius, d, n)?.0)
}

/// As [`hull_two_balls`], for unequal radii, also returning the bridge.
pub fn hull_two_balls_with_bridge(
    rl: f64,
    rr: f64,
    d: f64,
    n: usize,
) -> Result<(HullResult, Option<BridgeProfile>)> {
    let body_area = unit_sphere_area(n) * (rl.powi(n as i32) + rr.powi(n as i32));
    let tol = TOL_AREA * body_area;
    let Some((bridge, margin)) = bridge::best(bridge::tangent_bridges(rl, rr, d, n)?) else {
        return Ok((
            HullResult {
                hull_area: body_area,
                body_area,
                bridge: None,
                is_outward_minimizing: true,
                is_strictly: true,
                margin: 0.0,
                slab_ok: true,
                cylinder_ok: true,
            },
            None,
        ));
    };
    let cl = -(rl + 0.5 * d);
    let cr = rr + 0.5 * d;
    let result = HullResult {
        hull_area: body_area + margin,
        body_area,
        bridge: Some(BridgeSummary::from(&bridge)),
        is_outward_minimizing: margin >= -tol,
        is_strictly: margin > tol,
        margin,
        slab_ok: bridge.x_left() >= cl && bridge.x_right() <= cr,
        cylinder_ok: bridge.max_radius() <= rl.max(rr) * (1.0 + 1e-12),
    };
    Ok((result, Some(bridge)))
}

/// Margin of the two-ball hull as a function of the gap; `None` where no
/// bridge exists (treated as positive by the scan).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdScan {
    pub samples: Vec<(f64, Option<f64>)>,
    pub sign_changes: usize,
    pub d_star: f64,
    pub bracket: (f64, f64),
}

fn margin_of(radius: f64, d: f64, n: usize) -> Result<Option<f64>> {
    Ok(bridge::best(bridge::tangent_bridges(radius, radius, d, n)?).map(|(_, m)| m))
}

/// Scan `d` over `[d_lo, d_hi]` with `count` points, locate the sign change
/// of the margin and bisect it down to a bracket of width `tol`.
pub fn margin_threshold(
    radius: f64,
    n: usize,
    d_lo: f64,
    d_hi: f64,
    count: usize,
    tol: f64,
    exec: Exec,
) -> Result<ThresholdScan> {
    if !(d_lo > 0.0 && d_hi > d_lo && count >= 2) {
        return Err(Error::InvalidParams("threshold scan needs 0 < d_lo < d_hi and count >= 2".into()));
    }
    let ds: Vec<f64> = (0..count)
        .map(|k| d_lo + (d_hi - d_lo) * k as f64 / (count - 1) as f64)
        .collect();
    let margins = exec
        .map_slice(&ds, |&d| margin_of(radius, d, n))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let negative = |m: Option<f64>| m.is_some_and(|v| v < 0.0);
    let mut changes = Vec::new();
    for k in 0..count - 1 {
        if negative(margins[k]) != negative(margins[k + 1]) {
            changes.push(k);
        }
    }
    let Some(&k) = changes.first() else {
        return Err(Error::NoConvergence("margin does not change sign on the scan interval".into()));
    };
    let (mut a, mut b) = (ds[k], ds[k + 1]);
    let neg_a = negative(margins[k]);
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if negative(margin_of(radius, mid, n)?) == neg_a {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(ThresholdScan {
        samples: ds.into_iter().zip(margins).collect(),
        sign_changes: changes.len(),
        d_star: 0.5 * (a + b),
        bracket: (a, b),
    })
}
