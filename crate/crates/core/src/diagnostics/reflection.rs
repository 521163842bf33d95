use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{diameter, self_intersects, ProfileSurface, SignedDistanceGrid, Vec2};
use crate::par::Exec;

/// Azimuthal samples per meridian cell for axisymmetric bodies; the
/// reflection planes used here all contain the z-axis direction, so the
/// half circle `[0, π]` suffices.
const AZIMUTHS: usize = 16;
/// Cap on raster cells along the longer side of the bounding box.
const MAX_CELLS: usize = 256;

/// Hyperplane `{x : <x, ν> = λ}` in `R^{n+1}`. Points are written as
/// `[x, y, z]`; plane curves use `z = 0` and normals with `ν_z = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Plane {
    pub normal: [f64; 3],
    pub lambda: f64,
}

impl Plane {
    pub fn new(normal: [f64; 3], lambda: f64) -> Result<Self> {
        let len = normal.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(len > 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidParams("plane normal must be nonzero and λ finite".into()));
        }
        Ok(Self { normal: normal.map(|c| c / len), lambda })
    }

    /// Normal at angle `alpha` from the x-axis in the xy-plane. For
    /// axisymmetric bodies `alpha` is the colatitude from the rotation axis.
    pub fn at_angle(alpha: f64, lambda: f64) -> Self {
        Self { normal: [alpha.cos(), alpha.sin(), 0.0], lambda }
    }

    pub fn side(&self, p: [f64; 3]) -> f64 {
        p[0] * self.normal[0] + p[1] * self.normal[1] + p[2] * self.normal[2] - self.lambda
    }

    pub fn reflect(&self, p: [f64; 3]) -> [f64; 3] {
        let s = 2.0 * self.side(p);
        [p[0] - s * self.normal[0], p[1] - s * self.normal[1], p[2] - s * self.normal[2]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// Largest penetration depth of a reflected cell outside the region.
    pub violation: f64,
    pub tolerance: f64,
}

/// Rasterized region with a signed distance field, reusable across planes.
#[derive(Debug, Clone)]
pub struct Raster {
    n: usize,
    points: Vec<[f64; 3]>,
    sdf: SignedDistanceGrid,
    h: f64,
    cell: f64,
    exec: Exec,
}

impl Raster {
    pub fn new(surface: &ProfileSurface, exec: Exec) -> Result<Self> {
        if let Some(rep) = self_intersects(surface) {
            return Err(Error::NotEmbedded(format!("{:?} near ({:.4}, {:.4})", rep.kind, rep.location.x, rep.location.y)));
        }
        let h = surface.spacing();
        let (lo, hi) = surface.bounding_box();
        let ext = (hi.x - lo.x).max(hi.y - lo.y);
        let cells = ((ext / h).ceil() as usize).clamp(32, MAX_CELLS);
        let cell = ext / cells as f64;
        let axisym = surface.is_axisymmetric();
        let y0 = if axisym { 0.0 } else { lo.y };
        let nx = ((hi.x - lo.x) / cell).ceil() as usize;
        let ny = ((hi.y - y0) / cell).ceil() as usize;
        let sdf = SignedDistanceGrid::new(surface, 2 * cells, exec);
        let centers: Vec<Option<Vec2>> = exec.map(nx * ny, |k| {
            let p = Vec2::new(lo.x + ((k % nx) as f64 + 0.5) * cell, y0 + ((k / nx) as f64 + 0.5) * cell);
            surface.contains(p).then_some(p)
        });
        let mut points = Vec::new();
        for p in centers.into_iter().flatten() {
            if axisym {
                for a in 0..AZIMUTHS {
                    let phi = std::f64::consts::PI * (a as f64 + 0.5) / AZIMUTHS as f64;
                    points.push([p.x, p.y * phi.cos(), p.y * phi.sin()]);
                }
            } else {
                points.push([p.x, p.y, 0.0]);
            }
        }
        Ok(Self { n: surface.n(), points, sdf, h, cell, exec })
    }

    /// Sample spacing `h` of the surface.
    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn cell(&self) -> f64 {
        self.cell
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    fn meridian(&self, p: [f64; 3]) -> Vec2 {
        if self.n >= 2 {
            Vec2::new(p[0], p[1].hypot(p[2]))
        } else {
            Vec2::new(p[0], p[1])
        }
    }

    /// Signed distance of a point of `R^{n+1}` to the boundary (negative inside).
    pub fn signed_distance(&self, p: [f64; 3]) -> f64 {
        let q = self.meridian(p);
        self.sdf.bilinear(q).unwrap_or_else(|| self.sdf.box_distance(q))
    }

    /// Max penetration depth of reflected lower-half cells (0 if none).
    pub fn violation(&self, plane: &Plane) -> f64 {
        let pts = &self.points;
        let v = self.exec.max_f64(pts.len(), |k| {
            let p = pts[k];
            if plane.side(p) >= 0.0 {
                return 0.0;
            }
            self.signed_distance(plane.reflect(p)).max(0.0)
        });
        v.max(0.0)
    }

    pub fn admissibility(&self, plane: &Plane, tol: f64) -> Admissibility {
        let violation = self.violation(plane);
        Admissibility { admissible: violation <= tol, violation, tolerance: tol }
    }

    fn support(&self, normal: [f64; 3]) -> (f64, f64) {
        let probe = Plane { normal, lambda: 0.0 };
        self.points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &p| {
            let s = probe.side(p);
            (lo.min(s), hi.max(s))
        })
    }
}

/// Def.-style admissibility `N_{λ,ν}(E ∩ H⁻) ⊂ E` decided on a raster of
/// the enclosed region; `tol` defaults to the sample spacing `h`.
pub fn is_admissible(surface: &ProfileSurface, plane: &Plane, tol: Option<f64>) -> Result<Admissibility> {
    check_plane(surface, plane)?;
    let raster = Raster::new(surface, Exec::default())?;
    let tol = tol.unwrap_or(raster.spacing());
    Ok(raster.admissibility(plane, tol))
}

fn check_plane(surface: &ProfileSurface, plane: &Plane) -> Result<()> {
    if surface.n() == 1 && plane.normal[2] != 0.0 {
        return Err(Error::InvalidParams("plane curves need a normal with zero z-component".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReflectionProfile {
    pub origin: Vec2,
    pub directions: Vec<[f64; 3]>,
    /// `λ_max` per direction, measured from `origin`.
    pub lambda_max: Vec<f64>,
    /// `Λ = max(−λ_max)`.
    pub big_lambda: f64,
    /// Bisection resolution (`h/4`).
    pub resolution: f64,
}

/// Reflection profile about the diameter midpoint (on the axis for
/// axisymmetric bodies).
pub fn reflection_profile(surface: &ProfileSurface, count: usize) -> Result<ReflectionProfile> {
    let mut origin = diameter(surface).midpoint;
    if surface.is_axisymmetric() {
        origin.y = 0.0;
    }
    reflection_profile_about(surface, count, origin, Exec::default())
}

/// Direction grid: `count` angles on the circle for `n = 1`, `count`
/// colatitudes on `[0, π]` for axisymmetric bodies.
pub fn direction_grid(n: usize, count: usize) -> Vec<f64> {
    if n == 1 {
        (0..count).map(|k| std::f64::consts::TAU * k as f64 / count as f64).collect()
    } else {
        let c = count.max(2);
        (0..c).map(|k| std::f64::consts::PI * k as f64 / (c - 1) as f64).collect()
    }
}

pub fn reflection_profile_about(
    surface: &ProfileSurface,
    count: usize,
    origin: Vec2,
    exec: Exec,
) -> Result<ReflectionProfile> {
    if count == 0 {
        return Err(Error::InvalidParams("direction count must be positive".into()));
    }
    if surface.is_axisymmetric() && origin.y != 0.0 {
        return Err(Error::InvalidParams("axisymmetric reflection profiles need an on-axis origin".into()));
    }
    let shifted = surface.translated(Vec2::new(-origin.x, -origin.y))?;
    let raster = Raster::new(&shifted, exec)?;
    let h = raster.spacing();
    let resolution = 0.25 * h;
    let tol = 0.25 * h;
    let mut directions = Vec::new();
    let mut lambda_max = Vec::new();
    for alpha in direction_grid(surface.n(), count) {
        let plane = Plane::at_angle(alpha, 0.0);
        let (lo_s, hi_s) = raster.support(plane.normal);
        let mut lo = lo_s - raster.cell();
        let mut hi = hi_s + raster.cell();
        if raster.admissibility(&Plane { lambda: hi, ..plane }, tol).admissible {
            lo = hi;
        }
        while hi - lo > resolution {
            let mid = 0.5 * (lo + hi);
            if raster.admissibility(&Plane { lambda: mid, ..plane }, tol).admissible {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        directions.push(plane.normal);
        lambda_max.push(lo);
    }
    let big_lambda = lambda_max.iter().map(|l| -l).fold(f64::NEG_INFINITY, f64::max);
    Ok(ReflectionProfile { origin, directions, lambda_max, big_lambda, resolution })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_sphere;

    #[test]
    fn reflection_is_an_involution() {
        let p = Plane::new([1.0, 2.0, -0.5], 0.3).unwrap();
        let x = [0.7, -1.1, 2.0];
        let y = p.reflect(p.reflect(x));
        for i in 0..3 {
            assert!((x[i] - y[i]).abs() < 1e-14);
        }
        assert!((p.side(x) + p.side(p.reflect(x))).abs() < 1e-14);
    }

    #[test]
    fn ball_halfspace_verdicts() {
        for n in [1, 2] {
            let s = build_sphere(n, 1.0, 256).unwrap();
            let a = is_admissible(&s, &Plane::at_angle(0.0, -0.5), None).unwrap();
            assert!(a.admissible, "n={n} {a:?}");
            let b = is_admissible(&s, &Plane::at_angle(0.0, 0.5), None).unwrap();
            assert!(!b.admissible && b.violation > 0.5, "n={n} {b:?}");
        }
    }
}
