use std::f64::consts::PI;

use crate::error::Result;
use crate::geometry::{resample_arclength, ProfileCurve, ProfileSurface, Vec2};

/// Spherical end of an axial body: the sphere about `(center, 0)` is kept
/// on the far side of `join` (beyond it in the direction of the pole).
#[derive(Debug, Clone, Copy)]
pub(crate) struct Cap {
    pub center: f64,
    pub radius: f64,
    pub join: f64,
}

/// Axis-anchored profile made of a right cap, a graph `f` on
/// `[left.join, right.join]` and a left cap, resampled to `m` points.
pub(crate) fn axial_profile(right: Cap, left: Cap, f: impl Fn(f64) -> f64, m: usize) -> Result<ProfileCurve> {
    let ds = 2e-3 * right.radius.min(left.radius);
    let mut pts = Vec::new();

    let phi_r = ((right.join - right.center) / right.radius).clamp(-1.0, 1.0).acos();
    let k = ((phi_r * right.radius / ds).ceil() as usize).max(4);
    for j in 0..k {
        let phi = phi_r * j as f64 / k as f64;
        pts.push(Vec2::new(right.center + right.radius * phi.cos(), right.radius * phi.sin()));
    }

    let span = right.join - left.join;
    let k = ((span / (0.25 * ds)).ceil() as usize).max(4);
    for j in 0..k {
        let x = right.join - span * j as f64 / k as f64;
        pts.push(Vec2::new(x, f(x)));
    }

    let phi_l = ((left.join - left.center) / left.radius).clamp(-1.0, 1.0).acos();
    let k = (((PI - phi_l) * left.radius / ds).ceil() as usize).max(4);
    for j in 0..=k {
        let phi = phi_l + (PI - phi_l) * j as f64 / k as f64;
        pts.push(Vec2::new(left.center + left.radius * phi.cos(), left.radius * phi.sin()));
    }
    let last = pts.len() - 1;
    pts[last].y = 0.0;

    let dense = ProfileSurface::single(2, ProfileCurve::anchored(pts)?)?;
    Ok(resample_arclength(&dense, m)?.curves()[0].clone())
}
