use super::spline::PeriodicSpline;
use super::{ProfileCurve, ProfileSurface, Topology, Vec2};
use crate::error::{Error, Result};

const PASSES: usize = 2;

/// Resample every component to uniform arclength spacing with cubic
/// interpolation of positions.
///
/// For a multi-component surface `m` is the total sample budget, split in
/// proportion to component length (each component gets at least 16).
pub fn resample_arclength(surface: &ProfileSurface, m: usize) -> Result<ProfileSurface> {
    if m < 16 {
        return Err(Error::InvalidParams(format!("resample count m = {m} is below 16")));
    }
    let total = surface.total_length();
    if total < 1e-9 {
        return Err(Error::DegenerateCurve("total length below 1e-9".into()));
    }
    let counts = split_budget(surface, m);
    let curves = surface
        .curves()
        .iter()
        .zip(counts)
        .map(|(c, k)| resample_curve(c, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProfileSurface::from_parts_unchecked(surface.n(), curves))
}

fn split_budget(surface: &ProfileSurface, m: usize) -> Vec<usize> {
    let curves = surface.curves();
    if curves.len() == 1 {
        return vec![m];
    }
    let total = surface.total_length();
    curves
        .iter()
        .map(|c| ((m as f64 * c.length() / total).round() as usize).max(16))
        .collect()
}

pub(crate) fn resample_curve(curve: &ProfileCurve, m: usize) -> Result<ProfileCurve> {
    if curve.len() < 4 {
        return Err(Error::DegenerateCurve("need at least 4 samples to resample".into()));
    }
    if curve.length() < 1e-9 {
        return Err(Error::DegenerateCurve("curve length below 1e-9".into()));
    }
    match curve.topology() {
        Topology::Closed => {
            let mut pts = curve.points().to_vec();
            for _ in 0..PASSES {
                pts = resample_loop(&pts, m);
            }
            Ok(ProfileCurve::from_parts_unchecked(pts, Topology::Closed))
        }
        Topology::Anchored => {
            // Resample the mirror-closed loop; by symmetry the far anchor is
            // hit exactly when the loop count is even.
            let mut half = curve.points().to_vec();
            for _ in 0..PASSES {
                let loop_pts = mirror_loop(&half);
                let out = resample_loop(&loop_pts, 2 * (m - 1));
                half = out[..m].to_vec();
                half[0].y = 0.0;
                half[m - 1].y = 0.0;
            }
            Ok(ProfileCurve::from_parts_unchecked(half, Topology::Anchored))
        }
    }
}

/// `p0 .. p_{m-1}` followed by the mirror images of `p_{m-2} .. p1`.
pub(crate) fn mirror_loop(half: &[Vec2]) -> Vec<Vec2> {
    let m = half.len();
    let mut pts = Vec::with_capacity(2 * (m - 1));
    pts.extend_from_slice(half);
    pts.extend(half[1..m - 1].iter().rev().map(|p| p.mirror_axis()));
    pts
}

/// Uniform samples in polyline arclength, positions from the periodic spline.
/// When the input spacing is already uniform and the count unchanged, the
/// targets coincide with the knots and the output equals the input.
fn resample_loop(points: &[Vec2], m: usize) -> Vec<Vec2> {
    let spline = PeriodicSpline::new(points);
    let period = spline.period();
    let step = period / m as f64;
    let mut out = Vec::with_capacity(m);
    let mut hint = 0;
    for k in 0..m {
        let (p, i) = spline.eval(k as f64 * step, hint);
        hint = i;
        out.push(p);
    }
    out
}
