use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::FlowTrajectory;
use crate::geometry::{diameter, LocalGeometry, ProfileSurface, Vec2};
use crate::par::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StarReport {
    pub star_shaped: bool,
    /// `min <ν, (x − c)/|x − c|>` over the samples.
    pub min_support: f64,
    pub rays: usize,
    /// Rays that do not cross the surface exactly once.
    pub bad_rays: usize,
}

/// Meridian cross-section as closed polylines: the curves themselves for
/// `n = 1`, profile plus mirror image for axisymmetric bodies.
fn cross_section(surface: &ProfileSurface) -> Vec<Vec<Vec2>> {
    let mut out = Vec::new();
    for c in surface.curves() {
        let pts = c.points().to_vec();
        if !surface.is_axisymmetric() {
            out.push(pts);
        } else if c.is_closed() {
            out.push(pts.iter().map(|p| p.mirror_axis()).collect());
            out.push(pts);
        } else {
            let mut loop_pts = pts.clone();
            loop_pts.extend(pts.iter().rev().skip(1).take(pts.len() - 2).map(|p| p.mirror_axis()));
            out.push(loop_pts);
        }
    }
    out
}

fn crossings(polys: &[Vec<Vec2>], c: Vec2, dir: Vec2) -> usize {
    let mut count = 0;
    for poly in polys {
        let m = poly.len();
        for i in 0..m {
            let a = poly[i] - c;
            let b = poly[(i + 1) % m] - c;
            let sa = dir.cross(a);
            let sb = dir.cross(b);
            if (sa > 0.0) == (sb > 0.0) {
                continue;
            }
            let t = sa / (sa - sb);
            let hit = a + (b - a) * t;
            if hit.dot(dir) > 0.0 {
                count += 1;
            }
        }
    }
    count
}

/// Star-shapedness about `center` (a meridian point for `n >= 2`).
///
/// Plane curves and on-axis centers use ray casting over an angular grid
/// with at least as many rays as samples. For an off-axis center of an
/// axisymmetric body the test is the sign of the support function over
/// the revolved surface.
pub fn is_star_shaped(surface: &ProfileSurface, center: Vec2) -> Result<StarReport> {
    is_star_shaped_with(surface, center, Exec::default())
}

pub fn is_star_shaped_with(surface: &ProfileSurface, center: Vec2, exec: Exec) -> Result<StarReport> {
    let axisym = surface.is_axisymmetric();
    if !surface.contains(center) || (axisym && center.y < 0.0) {
        return Err(Error::CenterOutside(center));
    }
    let geo = LocalGeometry::compute(surface)?;
    let off_axis = axisym && center.y > 0.0;
    let min_support = geo
        .iter()
        .map(|s| {
            if off_axis {
                // min over the azimuth of <ν, X − C> with X, ν revolved
                let d = s.point - Vec2::new(center.x, 0.0);
                let raw = s.normal.x * d.x + s.normal.y * d.y - s.normal.y.abs() * center.y;
                let far = (d.norm_sq() + center.y * center.y + 2.0 * d.y.abs() * center.y).sqrt();
                raw / far.max(f64::MIN_POSITIVE)
            } else {
                let d = s.point - center;
                s.normal.dot(d) / d.norm()
            }
        })
        .fold(f64::INFINITY, f64::min);
    if off_axis {
        return Ok(StarReport { star_shaped: min_support > 0.0, min_support, rays: 0, bad_rays: 0 });
    }
    let polys = cross_section(surface);
    let rays = polys.iter().map(|p| p.len()).sum::<usize>().max(256);
    let bad: Vec<bool> = exec.map(rays, |k| {
        let th = std::f64::consts::TAU * (k as f64 + 0.5) / rays as f64;
        crossings(&polys, center, Vec2::from_polar(1.0, th)) != 1
    });
    let bad_rays = bad.iter().filter(|&&b| b).count();
    Ok(StarReport { star_shaped: bad_rays == 0, min_support, rays, bad_rays })
}

/// Waiting time `n log(diam / R)`.
pub fn t_star(diam: f64, inradius: f64, n: usize) -> Result<f64> {
    if !(inradius > 0.0) || !diam.is_finite() {
        return Err(Error::InvalidGeometry(format!("need diam finite and R > 0 (R = {inradius})")));
    }
    if diam < 2.0 * inradius * (1.0 - 1e-12) {
        return Err(Error::InvalidGeometry(format!("diam = {diam} is smaller than 2R = {}", 2.0 * inradius)));
    }
    Ok(n as f64 * (diam / inradius).ln())
}

/// Diameter midpoint used as the origin of the waiting-time and
/// containment checks (moved onto the axis for axisymmetric bodies).
pub fn diameter_origin(surface: &ProfileSurface) -> (Vec2, f64) {
    let d = diameter(surface);
    let mut o = d.midpoint;
    if surface.is_axisymmetric() {
        o.y = 0.0;
    }
    (o, d.value)
}

/// Earliest frame that is star-shaped about the initial diameter midpoint
/// and lies outside `B_{diam/2}` of it (within the frame spacing `h`).
pub fn first_star_time(traj: &FlowTrajectory) -> Option<f64> {
    let (origin, diam) = diameter_origin(&traj.frames.first()?.surface);
    traj.frames.iter().find_map(|f| {
        let h = f.surface.spacing();
        let outside = f.surface.points().all(|p| p.dist(origin) >= 0.5 * diam - h);
        if !outside {
            return None;
        }
        match is_star_shaped(&f.surface, origin) {
            Ok(r) if r.star_shaped => Some(f.t),
            _ => None,
        }
    })
}
