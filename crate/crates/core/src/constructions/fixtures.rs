//! Analytic test surfaces.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::axial::{axial_profile, Cap};
use super::junction::BellJunction;
use crate::error::{Error, Result};
use crate::geometry::{resample_arclength, LocalGeometry, ProfileCurve, ProfileSurface, Vec2};

fn check_m(m: usize) -> Result<()> {
    if m < 16 {
        return Err(Error::InvalidParams(format!("sample count m = {m} is below 16")));
    }
    Ok(())
}

/// Round sphere of radius `radius` centered at the origin: a circle for
/// `n = 1`, a half-circle profile for `n >= 2`.
pub fn build_sphere(n: usize, radius: f64, m: usize) -> Result<ProfileSurface> {
    check_m(m)?;
    if !(radius > 0.0) || n == 0 {
        return Err(Error::InvalidParams(format!("sphere needs R > 0 and n >= 1 (R = {radius}, n = {n})")));
    }
    let curve = if n == 1 {
        ProfileCurve::closed((0..m).map(|k| Vec2::from_polar(radius, TAU * k as f64 / m as f64)).collect())?
    } else {
        let mut pts: Vec<Vec2> = (0..m)
            .map(|k| Vec2::from_polar(radius, PI * k as f64 / (m - 1) as f64))
            .collect();
        pts[m - 1] = Vec2::new(-radius, 0.0);
        ProfileCurve::anchored(pts)?
    };
    ProfileSurface::single(n, curve)
}

/// Torus of revolution (n = 2): tube radius `b` about a core circle of radius `a`.
pub fn build_torus(a: f64, b: f64, m: usize) -> Result<ProfileSurface> {
    check_m(m)?;
    if !(a > b && b > 0.0) {
        return Err(Error::InvalidParams(format!("torus needs a > b > 0 (a = {a}, b = {b})")));
    }
    let pts = (0..m)
        .map(|k| Vec2::new(0.0, a) + Vec2::from_polar(b, TAU * k as f64 / m as f64))
        .collect();
    ProfileSurface::single(2, ProfileCurve::closed(pts)?)
}

/// Two bells joined by a thin cylinder running between them.
///
/// Each bell keeps its sphere up to `junction` (measured from its center
/// toward the neck), then a quintic zone of length `eps` narrows to the
/// neck radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeanutSpec {
    pub left_radius: f64,
    pub left_center: f64,
    pub left_junction: f64,
    pub left_eps: f64,
    pub right_radius: f64,
    pub right_center: f64,
    pub right_junction: f64,
    pub right_eps: f64,
    pub neck: f64,
}

impl PeanutSpec {
    /// Symmetric long-neck blob: unit bells at ±2.5, neck radius 0.2.
    pub fn blob() -> Self {
        Self {
            left_radius: 1.0,
            left_center: -2.5,
            left_junction: 0.5,
            left_eps: 0.98,
            right_radius: 1.0,
            right_center: 2.5,
            right_junction: 0.5,
            right_eps: 0.98,
            neck: 0.2,
        }
    }

    /// Unequal bells (R = 0.8 on the left, R = 1 on the right).
    pub fn asymmetric() -> Self {
        Self {
            left_radius: 0.8,
            left_center: -2.2,
            left_junction: 0.4,
            left_eps: 0.78,
            ..Self::blob()
        }
    }

    fn bells(&self) -> Result<(BellJunction, BellJunction)> {
        let l = BellJunction::new(self.left_radius, self.neck, self.left_junction, self.left_eps)?;
        let r = BellJunction::new(self.right_radius, self.neck, self.right_junction, self.right_eps)?;
        let l_end = self.left_center + l.zone_end();
        let r_end = self.right_center - r.zone_end();
        if l_end > r_end {
            return Err(Error::GluingOverlap(format!(
                "bell zones overlap: left ends at {l_end}, right starts at {r_end}"
            )));
        }
        Ok((l, r))
    }

    /// Profile height at `x` between the two junction latitudes.
    fn height(&self, l: &BellJunction, r: &BellJunction, x: f64) -> f64 {
        let mid = 0.5 * ((self.left_center + l.zone_end()) + (self.right_center - r.zone_end()));
        if x >= mid {
            r.value(self.right_center - x)
        } else {
            l.value(x - self.left_center)
        }
    }

    /// Midpoint of the cylindrical neck.
    pub fn neck_midpoint(&self) -> Result<f64> {
        let (l, r) = self.bells()?;
        Ok(0.5 * ((self.left_center + l.zone_end()) + (self.right_center - r.zone_end())))
    }

    /// Minimum mean curvature over both junction zones (dense evaluation).
    pub fn zone_min_h(&self) -> Result<f64> {
        let (l, r) = self.bells()?;
        Ok(l.zone_stats(4000).min_h.min(r.zone_stats(4000).min_h))
    }
}

pub fn build_peanut(spec: &PeanutSpec, m: usize) -> Result<ProfileSurface> {
    check_m(m)?;
    let (l, r) = spec.bells()?;
    let zone_h = spec.zone_min_h()?;
    if !(zone_h > 0.0) {
        return Err(Error::NotMeanConvex {
            condition: "H > 0".into(),
            location: "peanut junction zone".into(),
            value: zone_h,
        });
    }
    let right = Cap {
        center: spec.right_center,
        radius: spec.right_radius,
        join: spec.right_center - spec.right_junction,
    };
    let left = Cap {
        center: spec.left_center,
        radius: spec.left_radius,
        join: spec.left_center + spec.left_junction,
    };
    let curve = axial_profile(right, left, |x| spec.height(&l, &r, x), m)?;
    ProfileSurface::single(2, curve)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BeanSpec {
    /// Lopsided convex oval `(a cos θ, b sin θ (1 + k cos θ))` (n = 1).
    Egg { a: f64, b: f64, k: f64 },
    /// Mean-convex peanut of revolution (n = 2).
    Blob(PeanutSpec),
}

impl BeanSpec {
    pub fn default_for(n: usize) -> Result<Self> {
        match n {
            1 => Ok(BeanSpec::Egg { a: 1.3, b: 0.8, k: 0.15 }),
            2 => Ok(BeanSpec::Blob(PeanutSpec::blob())),
            _ => Err(Error::InvalidParams(format!("no bean fixture for n = {n}"))),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            BeanSpec::Egg { .. } => 1,
            BeanSpec::Blob(_) => 2,
        }
    }
}

/// Non-round mean-convex fixture for the waiting-time experiments.
///
/// The blob (n = 2) is verified at build time to be mean convex and not
/// star-shaped about any point of the axis (and hence about no interior
/// point, since moving a center off the axis only lowers the support
/// function). A curve with positive curvature is convex, so the egg
/// (n = 1) is only verified to be mean convex.
pub fn build_bean(spec: &BeanSpec, m: usize) -> Result<ProfileSurface> {
    check_m(m)?;
    let surface = match *spec {
        BeanSpec::Egg { a, b, k } => {
            if !(a > 0.0 && b > 0.0 && k.abs() < 1.0) {
                return Err(Error::InvalidParams(format!("egg needs a, b > 0 and |k| < 1 (a = {a}, b = {b}, k = {k})")));
            }
            let dense = 16 * m;
            let pts = (0..dense)
                .map(|j| {
                    let t = TAU * j as f64 / dense as f64;
                    Vec2::new(a * t.cos(), b * t.sin() * (1.0 + k * t.cos()))
                })
                .collect();
            let s = ProfileSurface::single(1, ProfileCurve::closed(pts)?)?;
            resample_arclength(&s, m)?
        }
        BeanSpec::Blob(p) => build_peanut(&p, m)?,
    };
    let geo = LocalGeometry::compute(&surface)?;
    if !(geo.min_h() > 0.0) {
        let (c, i) = geo.argmin_h();
        return Err(Error::NotMeanConvex {
            condition: "H > 0".into(),
            location: format!("{:?}", surface.curves()[c].points()[i]),
            value: geo.min_h(),
        });
    }
    if surface.is_axisymmetric() {
        if let Some(x0) = axis_star_center(&surface, &geo) {
            return Err(Error::InvalidParams(format!("bean is star-shaped about the axis point x = {x0}")));
        }
    }
    Ok(surface)
}

/// First axis point (on a fine scan of the enclosed axis interval) about
/// which every sample has positive support `<ν, p - c>`.
fn axis_star_center(surface: &ProfileSurface, geo: &LocalGeometry) -> Option<f64> {
    let (lo, hi) = surface.bounding_box();
    let scan = 2000;
    (1..scan).map(|k| lo.x + (hi.x - lo.x) * k as f64 / scan as f64).find(|&x0| {
        let c = Vec2::new(x0, 0.0);
        geo.iter().all(|s| s.normal.dot(s.point - c) > 0.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{area, mean_curvature};

    #[test]
    fn sphere_profile_is_anchored_half_circle() {
        let s = build_sphere(2, 1.5, 64).unwrap();
        let c = &s.curves()[0];
        assert_eq!(c.points()[0], Vec2::new(1.5, 0.0));
        assert_eq!(c.points()[63], Vec2::new(-1.5, 0.0));
        assert!(build_sphere(2, 0.0, 64).is_err());
        assert!(build_sphere(2, 1.0, 8).is_err());
    }

    #[test]
    fn torus_rejects_bad_radii() {
        assert!(build_torus(0.5, 0.5, 64).is_err());
        let t = build_torus(2.0, 0.5, 512).unwrap();
        assert!((area(&t) / (4.0 * PI * PI) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn egg_is_convex() {
        let s = build_bean(&BeanSpec::default_for(1).unwrap(), 256).unwrap();
        let h = mean_curvature(&s).unwrap();
        assert!(h[0].iter().all(|&v| v > 0.3));
    }

    #[test]
    fn blob_is_mean_convex_and_not_star_shaped() {
        let s = build_bean(&BeanSpec::default_for(2).unwrap(), 512).unwrap();
        let h = mean_curvature(&s).unwrap();
        assert!(h[0].iter().all(|&v| v > 0.0));
        assert!(PeanutSpec::blob().zone_min_h().unwrap() > 0.0);
    }

    #[test]
    fn asymmetric_peanut_builds() {
        let p = PeanutSpec::asymmetric();
        assert!(p.zone_min_h().unwrap() > 0.0, "{}", p.zone_min_h().unwrap());
        build_peanut(&p, 512).unwrap();
    }
}
