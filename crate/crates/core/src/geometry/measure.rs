use serde::Serialize;

use super::distance::DistanceIndex;
use super::intersect::self_intersects_with;
use super::{ProfileSurface, Vec2};
use crate::error::{Error, Result};
use crate::par::Exec;

/// Area of the unit sphere `S^k` in `R^{k+1}`.
pub fn unit_sphere_area(k: usize) -> f64 {
    match k {
        0 => 2.0,
        1 => std::f64::consts::TAU,
        _ => std::f64::consts::TAU / (k - 1) as f64 * unit_sphere_area(k - 2),
    }
}

/// `n = 1`: length of the curves. `n >= 2`: area of the hypersurface of
/// revolution, exact for piecewise-linear profiles when `n = 2`
/// (frustum areas) and Simpson quadrature per segment otherwise.
pub fn area(surface: &ProfileSurface) -> f64 {
    let n = surface.n();
    if n == 1 {
        return surface.total_length();
    }
    let w = unit_sphere_area(n - 1);
    let mut total = 0.0;
    for c in surface.curves() {
        for i in 0..c.segment_count() {
            let (a, b) = c.segment(i);
            let len = a.dist(b);
            let weight = if n == 2 {
                0.5 * (a.y + b.y)
            } else {
                let e = (n - 1) as i32;
                (a.y.powi(e) + 4.0 * (0.5 * (a.y + b.y)).powi(e) + b.y.powi(e)) / 6.0
            };
            total += w * weight * len;
        }
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diameter {
    pub value: f64,
    /// Realizing points. For axisymmetric surfaces these are meridian-plane
    /// points, the second one on the opposite meridian (`y <= 0`).
    pub a: Vec2,
    pub b: Vec2,
    pub midpoint: Vec2,
}

/// Maximal distance between points of the (revolved) samples. Near-ties
/// (relative 1e-9) prefer the pair whose midpoint is closest to the axis,
/// then the lowest index.
pub fn diameter(surface: &ProfileSurface) -> Diameter {
    let pts: Vec<Vec2> = surface.points().collect();
    let axisym = surface.is_axisymmetric();
    let rows = Exec::default().map(pts.len(), |i| {
        let p = pts[i];
        let mut best = (f64::NEG_INFINITY, i);
        for (j, q) in pts.iter().enumerate().skip(i) {
            let d2 = if axisym {
                let dx = p.x - q.x;
                let dy = p.y + q.y;
                dx * dx + dy * dy
            } else {
                (p - *q).norm_sq()
            };
            if d2 > best.0 {
                best = (d2, j);
            }
        }
        best
    });
    let max_d2 = rows.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
    let mut chosen: Option<(usize, usize, f64)> = None;
    for (i, &(d2, j)) in rows.iter().enumerate() {
        if d2 < max_d2 * (1.0 - 2e-9) {
            continue;
        }
        let off_axis = if axisym { (pts[i].y - pts[j].y).abs() } else { 0.0 };
        if chosen.is_none_or(|(_, _, o)| off_axis < o - 1e-12) {
            chosen = Some((i, j, off_axis));
        }
    }
    let (i, j, _) = chosen.expect("surface has samples");
    let a = pts[i];
    let b = if axisym { pts[j].mirror_axis() } else { pts[j] };
    Diameter {
        value: a.dist(b),
        a,
        b,
        midpoint: a.lerp(b, 0.5),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Inradius {
    pub radius: f64,
    /// Center of a largest inscribed ball (meridian point for axisymmetric surfaces).
    pub center: Vec2,
}

pub fn inradius(surface: &ProfileSurface) -> Result<Inradius> {
    inradius_with(surface, Exec::default())
}

/// Largest inscribed ball by grid search over the enclosed region with
/// successive local refinement.
pub fn inradius_with(surface: &ProfileSurface, exec: Exec) -> Result<Inradius> {
    if let Some(rep) = self_intersects_with(surface.curves(), surface.n(), 0.25 * surface.spacing(), exec) {
        return Err(Error::NotEmbedded(format!("{:?} at {:?}", rep.kind, rep.location)));
    }
    let index = DistanceIndex::new(surface);
    let (lo, hi) = surface.bounding_box();
    let lo = if surface.is_axisymmetric() { Vec2::new(lo.x, 0.0) } else { lo };

    let eval_grid = |lo: Vec2, hi: Vec2, nodes: usize| -> Option<(f64, Vec2)> {
        let sx = (hi.x - lo.x) / (nodes - 1) as f64;
        let sy = (hi.y - lo.y) / (nodes - 1) as f64;
        let vals = exec.map(nodes * nodes, |k| {
            let p = Vec2::new(lo.x + (k % nodes) as f64 * sx, lo.y + (k / nodes) as f64 * sy);
            if surface.contains(p) {
                Some((index.distance(p), p))
            } else {
                None
            }
        });
        let mut best: Option<(f64, Vec2)> = None;
        for (d, p) in vals.into_iter().flatten() {
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, p));
            }
        }
        best
    };

    let (mut radius, mut center) = eval_grid(lo, hi, 129)
        .ok_or_else(|| Error::DegenerateCurve("no grid node inside the region".into()))?;
    let mut half = Vec2::new((hi.x - lo.x) / 128.0, (hi.y - lo.y) / 128.0) * 2.0;
    loop {
        let mut wlo = center - half;
        if surface.is_axisymmetric() {
            wlo.y = wlo.y.max(0.0);
        }
        let whi = center + half;
        if let Some((d, p)) = eval_grid(wlo, whi, 33) {
            let gain = d - radius;
            if d > radius {
                radius = d;
                center = p;
            }
            half = half * (4.0 / 32.0);
            if gain.abs() < 1e-3 * radius && half.norm() < 1e-4 * radius {
                break;
            }
        } else {
            break;
        }
        if half.norm() < 1e-12 {
            break;
        }
    }
    Ok(Inradius { radius, center })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_area_constants() {
        assert!((unit_sphere_area(2) - 4.0 * std::f64::consts::PI).abs() < 1e-14);
        assert!((unit_sphere_area(3) - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-13);
    }
}
