//! Discrete plane curves and generating profiles of hypersurfaces of revolution.
//!
//! A [`ProfileSurface`] of dimension `n` is either a union of closed plane
//! curves (`n = 1`) or the meridian profile of a body of revolution about
//! the x-axis (`n >= 2`), where `y` plays the role of the radius `f`.
//! Components are disjoint and not nested. Every curve is stored
//! counterclockwise, so the outward normal is the tangent rotated by -90°.
//! Axis-anchored curves run from the anchor with larger `x` to the one with
//! smaller `x`. Closed curves do not repeat their first sample.

mod curvature;
mod distance;
mod intersect;
pub mod io;
mod measure;
mod radial;
mod resample;
pub mod spline;
mod vec2;

pub use curvature::{mean_curvature, LocalGeometry, SampleGeometry};
pub use distance::{hausdorff_distance, DistanceIndex, SignedDistanceGrid};
pub use intersect::{segments_within, self_intersects, self_intersects_with, IntersectionReport};
pub use measure::{unit_sphere_area, area, diameter, inradius, inradius_with, Diameter, Inradius};
pub use radial::RadialGraph;
pub use resample::resample_arclength;
pub use vec2::Vec2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Closed,
    Anchored,
}

impl Topology {
    pub fn as_str(self) -> &'static str {
        match self {
            Topology::Closed => "closed",
            Topology::Anchored => "anchored",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    points: Vec<Vec2>,
    topology: Topology,
}

impl ProfileCurve {
    /// Closed loop. A trailing sample equal to the first (within 1e-12 of
    /// the mean spacing) is dropped.
    pub fn closed(mut points: Vec<Vec2>) -> Result<Self> {
        if points.len() >= 2 {
            let h = polyline_length(&points) / (points.len() - 1) as f64;
            if points[0].dist(*points.last().unwrap()) <= 1e-12 * h.max(f64::MIN_POSITIVE) {
                points.pop();
            }
        }
        if points.len() < 4 {
            return Err(Error::DegenerateCurve(format!(
                "closed curve needs at least 4 samples, got {}",
                points.len()
            )));
        }
        Ok(Self {
            points,
            topology: Topology::Closed,
        })
    }

    /// Axis-anchored profile: both end samples lie on the axis `y = 0`.
    /// End samples within 1e-9 of the mean spacing are snapped to the axis.
    pub fn anchored(mut points: Vec<Vec2>) -> Result<Self> {
        if points.len() < 4 {
            return Err(Error::DegenerateCurve(format!(
                "anchored curve needs at least 4 samples, got {}",
                points.len()
            )));
        }
        let h = polyline_length(&points) / (points.len() - 1) as f64;
        for idx in [0, points.len() - 1] {
            if points[idx].y.abs() > 1e-9 * h.max(1e-300) {
                return Err(Error::InvalidGeometry(format!(
                    "anchored curve endpoint {idx} is off the axis (y = {:e})",
                    points[idx].y
                )));
            }
            points[idx].y = 0.0;
        }
        Ok(Self {
            points,
            topology: Topology::Anchored,
        })
    }

    pub fn new(points: Vec<Vec2>, topology: Topology) -> Result<Self> {
        match topology {
            Topology::Closed => Self::closed(points),
            Topology::Anchored => Self::anchored(points),
        }
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.topology == Topology::Closed
    }

    pub fn segment_count(&self) -> usize {
        match self.topology {
            Topology::Closed => self.points.len(),
            Topology::Anchored => self.points.len() - 1,
        }
    }

    #[inline]
    pub fn segment(&self, i: usize) -> (Vec2, Vec2) {
        let n = self.points.len();
        (self.points[i], self.points[(i + 1) % n])
    }

    pub fn length(&self) -> f64 {
        (0..self.segment_count())
            .map(|i| {
                let (a, b) = self.segment(i);
                a.dist(b)
            })
            .sum()
    }

    /// Shoelace area of the loop; anchored curves are closed along the axis.
    pub fn signed_area(&self) -> f64 {
        let n = self.points.len();
        let mut s = 0.0;
        for i in 0..n {
            let a = self.points[i];
            let b = self.points[(i + 1) % n];
            s += a.cross(b);
        }
        0.5 * s
    }

    /// Same geometry, opposite orientation. Closed curves keep their first sample.
    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        match self.topology {
            Topology::Closed => points[1..].reverse(),
            Topology::Anchored => points.reverse(),
        }
        Self {
            points,
            topology: self.topology,
        }
    }

    pub fn map_points(&self, f: impl Fn(Vec2) -> Vec2) -> Self {
        Self {
            points: self.points.iter().map(|&p| f(p)).collect(),
            topology: self.topology,
        }
    }

    pub(crate) fn from_parts_unchecked(points: Vec<Vec2>, topology: Topology) -> Self {
        Self { points, topology }
    }

    pub(crate) fn points_mut(&mut self) -> &mut [Vec2] {
        &mut self.points
    }

    fn is_canonical(&self) -> bool {
        match self.topology {
            Topology::Closed => self.signed_area() > 0.0,
            Topology::Anchored => self.points[0].x > self.points[self.points.len() - 1].x,
        }
    }
}

fn polyline_length(points: &[Vec2]) -> f64 {
    points.windows(2).map(|w| w[0].dist(w[1])).sum()
}

/// A sampled surface: `n = 1` plane curves or `n >= 2` profiles of
/// hypersurfaces of revolution about the x-axis.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSurface {
    n: usize,
    curves: Vec<ProfileCurve>,
}

impl ProfileSurface {
    /// Validates and orients the components counterclockwise.
    pub fn new(n: usize, curves: Vec<ProfileCurve>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("dimension n must be at least 1".into()));
        }
        if curves.is_empty() {
            return Err(Error::DegenerateCurve("surface has no components".into()));
        }
        let mut oriented = Vec::with_capacity(curves.len());
        for (ci, c) in curves.into_iter().enumerate() {
            if n == 1 && c.topology == Topology::Anchored {
                return Err(Error::InvalidGeometry("plane curves (n = 1) must be closed".into()));
            }
            if n >= 2 {
                let h = c.length() / c.segment_count() as f64;
                if let Some((i, p)) = c.points.iter().enumerate().find(|(_, p)| p.y < -1e-12 * h) {
                    return Err(Error::InvalidGeometry(format!(
                        "curve {ci} sample {i} lies below the axis (f = {:e})",
                        p.y
                    )));
                }
            }
            if c.length() < 1e-9 {
                return Err(Error::DegenerateCurve(format!("curve {ci} has length below 1e-9")));
            }
            oriented.push(if c.is_canonical() { c } else { c.reversed() });
        }
        Ok(Self { n, curves: oriented })
    }

    pub fn single(n: usize, curve: ProfileCurve) -> Result<Self> {
        Self::new(n, vec![curve])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn curves(&self) -> &[ProfileCurve] {
        &self.curves
    }

    pub fn is_axisymmetric(&self) -> bool {
        self.n >= 2
    }

    pub fn sample_count(&self) -> usize {
        self.curves.iter().map(|c| c.len()).sum()
    }

    pub fn segment_count(&self) -> usize {
        self.curves.iter().map(|c| c.segment_count()).sum()
    }

    /// Nominal spacing `h`: mean segment length over all components.
    pub fn spacing(&self) -> f64 {
        let len: f64 = self.curves.iter().map(|c| c.length()).sum();
        len / self.segment_count() as f64
    }

    pub fn min_spacing(&self) -> f64 {
        self.curves
            .iter()
            .flat_map(|c| (0..c.segment_count()).map(move |i| {
                let (a, b) = c.segment(i);
                a.dist(b)
            }))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn total_length(&self) -> f64 {
        self.curves.iter().map(|c| c.length()).sum()
    }

    pub fn points(&self) -> impl Iterator<Item = Vec2> + '_ {
        self.curves.iter().flat_map(|c| c.points.iter().copied())
    }

    /// Axis-aligned bounding box `(min, max)` of the samples.
    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in self.points() {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    pub fn translated(&self, by: Vec2) -> Result<Self> {
        if self.n >= 2 && by.y != 0.0 {
            return Err(Error::InvalidParams("axisymmetric profiles translate along the axis only".into()));
        }
        Ok(self.map_points(|p| p + by))
    }

    pub fn scaled(&self, s: f64) -> Self {
        self.map_points(|p| p * s)
    }

    /// Mirror image across the plane `x = 0`.
    pub fn reflected_x(&self) -> Self {
        self.map_points_reorient(|p| Vec2::new(-p.x, p.y))
    }

    /// Mirror image across `y = 0` (plane curves only; profiles are symmetric already).
    pub fn reflected_y(&self) -> Self {
        if self.n >= 2 {
            return self.clone();
        }
        self.map_points_reorient(|p| Vec2::new(p.x, -p.y))
    }

    fn map_points(&self, f: impl Fn(Vec2) -> Vec2 + Copy) -> Self {
        Self {
            n: self.n,
            curves: self.curves.iter().map(|c| c.map_points(f)).collect(),
        }
    }

    fn map_points_reorient(&self, f: impl Fn(Vec2) -> Vec2 + Copy) -> Self {
        Self {
            n: self.n,
            curves: self.curves.iter().map(|c| c.map_points(f).reversed()).collect(),
        }
    }

    pub(crate) fn from_parts_unchecked(n: usize, curves: Vec<ProfileCurve>) -> Self {
        Self { n, curves }
    }

    pub(crate) fn curves_mut(&mut self) -> &mut [ProfileCurve] {
        &mut self.curves
    }

    /// Whether `p` lies in the enclosed region. For axisymmetric surfaces
    /// `p` is a meridian point `(x, rho)`; its sign of `rho` is ignored.
    pub fn contains(&self, p: Vec2) -> bool {
        let q = if self.n >= 2 { Vec2::new(p.x, p.y.abs()) } else { p };
        let mut inside = false;
        for c in &self.curves {
            for i in 0..c.segment_count() {
                let (a, b) = c.segment(i);
                if (a.y > q.y) != (b.y > q.y) {
                    let xc = a.x + (q.y - a.y) / (b.y - a.y) * (b.x - a.x);
                    if xc > q.x {
                        inside = !inside;
                    }
                }
            }
        }
        inside
    }

    /// Enclosed volume (n = 1: area; n >= 2: volume of revolution), used by
    /// sanity checks.
    pub fn enclosed_measure(&self) -> f64 {
        if self.n == 1 {
            return self.curves.iter().map(|c| c.signed_area()).sum();
        }
        let mut v = 0.0;
        for c in &self.curves {
            for i in 0..c.segment_count() {
                let (a, b) = c.segment(i);
                // frustum volume by Pappus: integral of pi f^2 dx with the sign of traversal
                v += std::f64::consts::PI * (a.x - b.x) * (a.y * a.y + a.y * b.y + b.y * b.y) / 3.0;
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(m: usize) -> Vec<Vec2> {
        let mut pts = Vec::new();
        let corners = [Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(1.0, 1.0), Vec2::new(0.0, 1.0)];
        for k in 0..4 {
            for j in 0..m {
                pts.push(corners[k].lerp(corners[(k + 1) % 4], j as f64 / m as f64));
            }
        }
        pts
    }

    #[test]
    fn orientation_is_normalized() {
        let mut pts = square(4);
        pts.reverse();
        let c = ProfileCurve::closed(pts).unwrap();
        assert!(c.signed_area() < 0.0);
        let s = ProfileSurface::single(1, c).unwrap();
        assert!(s.curves()[0].signed_area() > 0.0);
    }

    #[test]
    fn closing_duplicate_is_dropped() {
        let mut pts = square(3);
        pts.push(pts[0]);
        let c = ProfileCurve::closed(pts).unwrap();
        assert_eq!(c.len(), 12);
    }

    #[test]
    fn contains_uses_meridian_symmetry() {
        let pts: Vec<Vec2> = (0..=32)
            .map(|k| Vec2::from_polar(1.0, std::f64::consts::PI * k as f64 / 32.0))
            .collect();
        let s = ProfileSurface::single(2, ProfileCurve::anchored(pts).unwrap()).unwrap();
        assert!(s.contains(Vec2::new(0.2, 0.3)));
        assert!(s.contains(Vec2::new(0.2, -0.3)));
        assert!(!s.contains(Vec2::new(0.9, 0.9)));
    }

    #[test]
    fn anchored_rejects_off_axis_ends() {
        let pts = vec![Vec2::new(1.0, 0.1), Vec2::new(0.5, 0.5), Vec2::new(0.0, 0.6), Vec2::new(-1.0, 0.0)];
        assert!(matches!(ProfileCurve::anchored(pts), Err(Error::InvalidGeometry(_))));
    }
}
