#![allow(dead_code)]

use imcf_core::constructions::build_sphere;
use imcf_core::geometry::{resample_arclength, ProfileCurve, ProfileSurface, Vec2};

/// Anchored capsule profile: cylinder of radius `r` over `[-len, len]` with
/// hemispherical ends.
pub fn capsule(len: f64, r: f64, m: usize) -> ProfileSurface {
    let mut pts = Vec::new();
    let k = 400;
    for i in 0..=k {
        let a = std::f64::consts::FRAC_PI_2 * i as f64 / k as f64;
        pts.push(Vec2::new(len + r * a.cos(), r * a.sin()));
    }
    let lines = 2000;
    for i in 1..lines {
        pts.push(Vec2::new(len - 2.0 * len * i as f64 / lines as f64, r));
    }
    for i in 0..=k {
        let a = std::f64::consts::FRAC_PI_2 * (1.0 + i as f64 / k as f64);
        pts.push(Vec2::new(-len + r * a.cos(), r * a.sin()));
    }
    let last = pts.len() - 1;
    pts[last].y = 0.0;
    let s = ProfileSurface::single(2, ProfileCurve::anchored(pts).unwrap()).unwrap();
    resample_arclength(&s, m).unwrap()
}

/// Two unit spheres (n = 2) with gap `d`, centered on the axis.
pub fn two_spheres(d: f64, m: usize) -> ProfileSurface {
    let s = build_sphere(2, 1.0, m).unwrap();
    let right = s.translated(Vec2::new(1.0 + 0.5 * d, 0.0)).unwrap();
    let left = s.translated(Vec2::new(-1.0 - 0.5 * d, 0.0)).unwrap();
    ProfileSurface::new(2, vec![left.curves()[0].clone(), right.curves()[0].clone()]).unwrap()
}

pub fn max_radius(s: &ProfileSurface, c: Vec2) -> f64 {
    s.points().map(|p| p.dist(c)).fold(0.0, f64::max)
}

pub fn min_radius(s: &ProfileSurface, c: Vec2) -> f64 {
    s.points().map(|p| p.dist(c)).fold(f64::INFINITY, f64::min)
}
