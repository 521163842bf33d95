use super::{ProfileCurve, ProfileSurface, Topology, Vec2};
use crate::error::{Error, Result};

/// Differential data at one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleGeometry {
    pub point: Vec2,
    /// Unit tangent in the direction of traversal.
    pub tangent: Vec2,
    /// Unit outward normal.
    pub normal: Vec2,
    /// Signed curvature of the curve (or profile), positive where convex.
    pub kappa: f64,
    /// Mean curvature of the surface (`kappa` for plane curves).
    pub h: f64,
}

/// Per-sample geometry for every component of a surface.
#[derive(Debug, Clone)]
pub struct LocalGeometry {
    pub curves: Vec<Vec<SampleGeometry>>,
}

impl LocalGeometry {
    pub fn compute(surface: &ProfileSurface) -> Result<Self> {
        let curves = surface
            .curves()
            .iter()
            .enumerate()
            .map(|(ci, c)| curve_geometry(c, surface.n(), ci))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { curves })
    }

    pub fn iter(&self) -> impl Iterator<Item = &SampleGeometry> {
        self.curves.iter().flatten()
    }

    pub fn min_h(&self) -> f64 {
        self.iter().map(|s| s.h).fold(f64::INFINITY, f64::min)
    }

    pub fn max_h(&self) -> f64 {
        self.iter().map(|s| s.h).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_abs_kappa(&self) -> f64 {
        self.iter().map(|s| s.kappa.abs()).fold(0.0, f64::max)
    }

    /// `(curve, sample)` index of the smallest mean curvature.
    pub fn argmin_h(&self) -> (usize, usize) {
        let mut best = (0, 0);
        let mut val = f64::INFINITY;
        for (ci, c) in self.curves.iter().enumerate() {
            for (i, s) in c.iter().enumerate() {
                if s.h < val {
                    val = s.h;
                    best = (ci, i);
                }
            }
        }
        best
    }
}

/// Per-sample mean curvature, indexed `[curve][sample]`.
pub fn mean_curvature(surface: &ProfileSurface) -> Result<Vec<Vec<f64>>> {
    Ok(LocalGeometry::compute(surface)?
        .curves
        .into_iter()
        .map(|c| c.into_iter().map(|s| s.h).collect())
        .collect())
}

#[inline]
fn neighbours(c: &ProfileCurve, i: usize) -> (Vec2, Vec2) {
    let pts = c.points();
    let m = pts.len();
    match c.topology() {
        Topology::Closed => (pts[(i + m - 1) % m], pts[(i + 1) % m]),
        Topology::Anchored => {
            let prev = if i == 0 { pts[1].mirror_axis() } else { pts[i - 1] };
            let next = if i == m - 1 { pts[m - 2].mirror_axis() } else { pts[i + 1] };
            (prev, next)
        }
    }
}

/// Three-point first derivative on a non-uniform chord-length grid.
#[inline]
fn three_point_slope(prev: Vec2, p: Vec2, next: Vec2) -> Vec2 {
    let dm = p - prev;
    let dp = next - p;
    let hm = dm.norm();
    let hp = dp.norm();
    (dp * (hm * hm) + dm * (hp * hp)) / (hm * hp * (hm + hp))
}

/// Signed curvature of the circle through three points (positive for a
/// left turn).
#[inline]
fn menger(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    2.0 * (b - a).cross(c - b) / ((b - a).norm() * (c - b).norm() * (c - a).norm())
}

fn curve_geometry(c: &ProfileCurve, n: usize, ci: usize) -> Result<Vec<SampleGeometry>> {
    let pts = c.points();
    let m = pts.len();
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let (prev, next) = neighbours(c, i);
        let p = pts[i];
        let tangent = three_point_slope(prev, p, next).normalized();
        let kappa = menger(prev, p, next);
        let normal = tangent.perp_right();
        let is_anchor = c.topology() == Topology::Anchored && (i == 0 || i == m - 1);
        let h = if n == 1 {
            kappa
        } else if is_anchor {
            n as f64 * kappa
        } else {
            if p.y < 1e-9 {
                return Err(Error::AxisSingularity { curve: ci, index: i, f: p.y });
            }
            kappa + (n - 1) as f64 * normal.y / p.y
        };
        out.push(SampleGeometry {
            point: p,
            tangent,
            normal,
            kappa,
            h,
        });
    }
    Ok(out)
}
