use serde::Serialize;

use super::distance::{point_segment, DistanceIndex};
use super::{ProfileCurve, ProfileSurface, Topology, Vec2};
use crate::par::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntersectionKind {
    /// Two segments cross or come within the contact tolerance.
    Segments,
    /// A profile sample reaches the rotation axis away from an anchor.
    Axis,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntersectionReport {
    pub kind: IntersectionKind,
    /// `(curve, segment)` of the first segment (or the offending sample for `Axis`).
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub location: Vec2,
    pub distance: f64,
}

#[inline]
fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b - a).cross(c - a)
}

/// Distance between segments `ab` and `cd` and a representative contact point.
pub fn segment_distance(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> (f64, Vec2) {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0.0 && o3 * o4 < 0.0 {
        let t = o3 / (o3 - o4);
        return (0.0, a.lerp(b, t));
    }
    let cands = [
        (point_segment(a, c, d), a),
        (point_segment(b, c, d), b),
        (point_segment(c, a, b), c),
        (point_segment(d, a, b), d),
    ];
    let mut best = (f64::INFINITY, a);
    for ((dist, q), p) in cands {
        if dist < best.0 {
            best = (dist, p.lerp(q, 0.5));
        }
    }
    best
}

/// True if segments `ab` and `cd` are within `tol` of each other.
pub fn segments_within(a: Vec2, b: Vec2, c: Vec2, d: Vec2, tol: f64) -> bool {
    segment_distance(a, b, c, d).0 <= tol
}

fn adjacent(curve: &ProfileCurve, i: usize, j: usize) -> bool {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    if j == i + 1 {
        return true;
    }
    curve.topology() == Topology::Closed && i == 0 && j == curve.segment_count() - 1
}

/// First self-intersection of the surface with contact tolerance `0.25 h`.
pub fn self_intersects(surface: &ProfileSurface) -> Option<IntersectionReport> {
    self_intersects_with(surface.curves(), surface.n(), 0.25 * surface.spacing(), Exec::default())
}

/// Self-intersection test over raw curves. Pairs are scanned in global
/// segment order and the lowest pair is reported, so the result does not
/// depend on the execution policy.
pub fn self_intersects_with(
    curves: &[ProfileCurve],
    n: usize,
    tol: f64,
    exec: Exec,
) -> Option<IntersectionReport> {
    if n >= 2 {
        for (ci, c) in curves.iter().enumerate() {
            let m = c.len();
            for (i, p) in c.points().iter().enumerate() {
                let anchor = c.topology() == Topology::Anchored && (i == 0 || i == m - 1);
                if !anchor && p.y <= tol {
                    return Some(IntersectionReport {
                        kind: IntersectionKind::Axis,
                        first: (ci, i),
                        second: (ci, i),
                        location: *p,
                        distance: p.y.max(0.0),
                    });
                }
            }
        }
    }

    let mut owner = Vec::new();
    let mut segs = Vec::new();
    for (ci, c) in curves.iter().enumerate() {
        for i in 0..c.segment_count() {
            owner.push((ci, i));
            segs.push(c.segment(i));
        }
    }
    let index = DistanceIndex::from_segments(segs.clone());
    exec.find_first(segs.len(), |k| {
        let (a, b) = segs[k];
        let lo = Vec2::new(a.x.min(b.x) - tol, a.y.min(b.y) - tol);
        let hi = Vec2::new(a.x.max(b.x) + tol, a.y.max(b.y) + tol);
        let mut cand = Vec::new();
        index.candidates(lo, hi, &mut cand);
        let (ck, ik) = owner[k];
        for &k2 in &cand {
            let k2 = k2 as usize;
            if k2 <= k {
                continue;
            }
            let (c2, i2) = owner[k2];
            if c2 == ck && adjacent(&curves[ck], ik, i2) {
                continue;
            }
            let (c, d) = segs[k2];
            let (dist, loc) = segment_distance(a, b, c, d);
            if dist <= tol {
                return Some(IntersectionReport {
                    kind: IntersectionKind::Segments,
                    first: (ck, ik),
                    second: (c2, i2),
                    location: loc,
                    distance: dist,
                });
            }
        }
        None
    })
}
