use serde::Serialize;

use super::FlowTrajectory;
use crate::error::{Error, Result};
use crate::geometry::{DistanceIndex, LocalGeometry, ProfileSurface, Vec2};
use crate::par::Exec;

/// Arrival time `u` rasterized on a regular grid; `None` outside the
/// foliated region.
#[derive(Debug, Clone)]
pub struct ArrivalField {
    pub origin: Vec2,
    pub spacing: f64,
    pub nx: usize,
    pub ny: usize,
    pub u: Vec<Option<f64>>,
}

impl ArrivalField {
    pub fn node(&self, i: usize, j: usize) -> Vec2 {
        Vec2::new(self.origin.x + i as f64 * self.spacing, self.origin.y + j as f64 * self.spacing)
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.u[j * self.nx + i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualStats {
    /// max |div(∇u/|∇u|) − |∇u|| over interior nodes.
    pub max: f64,
    pub mean: f64,
    /// Number of interior nodes where the residual was evaluated.
    pub count: usize,
    pub spacing: f64,
    pub frames: usize,
    /// Grid node (meridian coordinates) where the maximum occurs.
    pub max_at: Vec2,
}

/// Residual with a 128-cell grid over the whole trajectory.
pub fn arrival_time_residual(traj: &FlowTrajectory) -> Result<ResidualStats> {
    arrival_time_residual_with(traj, 128, None, Exec::default())
}

/// Residual using only frames with `t` in `window` (inclusive).
pub fn arrival_time_residual_with(
    traj: &FlowTrajectory,
    cells: usize,
    window: Option<(f64, f64)>,
    exec: Exec,
) -> Result<ResidualStats> {
    let field = arrival_field(traj, cells, window, exec)?;
    let n = traj.n;
    let h = field.spacing;
    let (nx, ny) = (field.nx, field.ny);
    let axisym = n >= 2;
    // fourth-order centered differences on a 5×5 window; below the axis
    // the field is continued by its even reflection
    const C1: [f64; 5] = [1.0, -8.0, 0.0, 8.0, -1.0];
    const C2: [f64; 5] = [-1.0, 16.0, -30.0, 16.0, -1.0];
    let vals = exec.map(nx * ny, |k| {
        let (i, j) = (k % nx, k / nx);
        if i < 2 || i + 2 >= nx || j == 0 || j + 2 >= ny || (!axisym && j < 2) {
            return None;
        }
        let mut w = [[0.0; 5]; 5];
        for (a, row) in w.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                let jj = (j as isize + b as isize - 2).unsigned_abs();
                *cell = field.get(i + a - 2, jj)?;
            }
        }
        // w[a][b] = u(i + a - 2, j + b - 2)
        let ux: f64 = (0..5).map(|a| C1[a] * w[a][2]).sum::<f64>() / (12.0 * h);
        let uy: f64 = (0..5).map(|b| C1[b] * w[2][b]).sum::<f64>() / (12.0 * h);
        let uxx: f64 = (0..5).map(|a| C2[a] * w[a][2]).sum::<f64>() / (12.0 * h * h);
        let uyy: f64 = (0..5).map(|b| C2[b] * w[2][b]).sum::<f64>() / (12.0 * h * h);
        let uxy: f64 = (0..5)
            .flat_map(|a| (0..5).map(move |b| (a, b)))
            .map(|(a, b)| C1[a] * C1[b] * w[a][b])
            .sum::<f64>()
            / (144.0 * h * h);
        let g2 = ux * ux + uy * uy;
        if !(g2 > 0.0) {
            return None;
        }
        let g = g2.sqrt();
        // div(∇u/|∇u|) = level-set curvature in the meridian plane plus the
        // rotational terms (n − 1) u_ρ / (ρ |∇u|)
        let mut div = (uxx * uy * uy - 2.0 * ux * uy * uxy + uyy * ux * ux) / (g2 * g);
        if axisym {
            div += (n - 1) as f64 * uy / (field.node(i, j).y * g);
        }
        Some(((div - g).abs(), field.node(i, j)))
    });
    let res: Vec<(f64, Vec2)> = vals.into_iter().flatten().collect();
    let Some(&(max, max_at)) = res.iter().max_by(|a, b| a.0.total_cmp(&b.0)) else {
        return Err(Error::PreconditionViolated("no interior grid node lies in the foliated region".into()));
    };
    Ok(ResidualStats {
        max,
        mean: res.iter().map(|r| r.0).sum::<f64>() / res.len() as f64,
        count: res.len(),
        spacing: h,
        frames: traj.frames.iter().filter(|f| in_window(f.t, window)).count(),
        max_at,
    })
}

fn in_window(t: f64, window: Option<(f64, f64)>) -> bool {
    window.is_none_or(|(a, b)| t >= a - 1e-12 && t <= b + 1e-12)
}

/// Consecutive frames must be embedded and strictly nested.
fn check_foliation(frames: &[(f64, &ProfileSurface)], embedded: &[bool]) -> Result<()> {
    for (k, e) in embedded.iter().enumerate() {
        if !e {
            return Err(Error::NotFoliated(format!("frame at t = {} is not embedded", frames[k].0)));
        }
    }
    for w in frames.windows(2) {
        let (t0, inner) = w[0];
        let (t1, outer) = w[1];
        let idx = DistanceIndex::new(outer);
        for p in inner.points() {
            if !outer.contains(p) || idx.distance(p) <= 0.0 {
                return Err(Error::NotFoliated(format!(
                    "frame t = {t0} is not strictly inside frame t = {t1} near ({:.4}, {:.4})",
                    p.x, p.y
                )));
            }
        }
    }
    Ok(())
}

/// Signed distance to the smooth curve through the samples: the polygon
/// distance corrected by the sagitta `κ L² s(1 − s)/2` of the nearest
/// segment, with `κ` interpolated from the vertex curvatures.
struct FrameDistance<'a> {
    surface: &'a ProfileSurface,
    index: DistanceIndex,
    kappa: Vec<(f64, f64)>,
}

impl<'a> FrameDistance<'a> {
    fn new(surface: &'a ProfileSurface) -> Result<Self> {
        let geo = LocalGeometry::compute(surface)?;
        let mut segs = Vec::with_capacity(surface.segment_count());
        let mut kappa = Vec::with_capacity(surface.segment_count());
        for (c, g) in surface.curves().iter().zip(&geo.curves) {
            for i in 0..c.segment_count() {
                segs.push(c.segment(i));
                kappa.push((g[i].kappa, g[(i + 1) % g.len()].kappa));
            }
        }
        Ok(Self { surface, index: DistanceIndex::from_segments(segs), kappa })
    }

    fn signed(&self, p: Vec2) -> f64 {
        let (d, k, q) = self.index.nearest(p);
        let (a, b) = self.index.segments()[k];
        let len2 = (b - a).norm_sq();
        let s = if len2 > 0.0 { ((q - a).dot(b - a) / len2).clamp(0.0, 1.0) } else { 0.0 };
        let (ka, kb) = self.kappa[k];
        let sagitta = 0.5 * ((1.0 - s) * ka + s * kb) * len2 * s * (1.0 - s);
        let signed = if self.surface.contains(p) { -d } else { d };
        signed - sagitta
    }
}

fn cubic_root(ts: &[f64], ds: &[f64], lo: f64, hi: f64) -> f64 {
    let eval = |t: f64| {
        let mut s = 0.0;
        for i in 0..ts.len() {
            let mut l = 1.0;
            for j in 0..ts.len() {
                if i != j {
                    l *= (t - ts[j]) / (ts[i] - ts[j]);
                }
            }
            s += l * ds[i];
        }
        s
    };
    let (mut a, mut b) = (lo, hi);
    let mut fa = eval(a);
    for _ in 0..60 {
        let mid = 0.5 * (a + b);
        let fm = eval(mid);
        if (fm > 0.0) == (fa > 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Rasterize `u` over the bounding box of the last frame (the meridian
/// half-plane for `n >= 2`). Signed distances are interpolated cubically
/// in time over four neighbouring frames.
pub fn arrival_field(
    traj: &FlowTrajectory,
    cells: usize,
    window: Option<(f64, f64)>,
    exec: Exec,
) -> Result<ArrivalField> {
    let sel: Vec<_> = traj.frames.iter().filter(|f| in_window(f.t, window)).collect();
    if sel.len() < 2 {
        return Err(Error::PreconditionViolated("arrival time needs at least two frames".into()));
    }
    let frames: Vec<(f64, &ProfileSurface)> = sel.iter().map(|f| (f.t, &f.surface)).collect();
    let embedded: Vec<bool> = sel.iter().map(|f| f.diag.embedded).collect();
    check_foliation(&frames, &embedded)?;

    let last = frames.last().unwrap().1;
    let axisym = last.is_axisymmetric();
    let (lo, hi) = last.bounding_box();
    let origin = Vec2::new(lo.x, if axisym { 0.0 } else { lo.y });
    let spacing = (hi.x - origin.x).max(hi.y - origin.y) / cells.max(8) as f64;
    let nx = ((hi.x - origin.x) / spacing).ceil() as usize + 1;
    let ny = ((hi.y - origin.y) / spacing).ceil() as usize + 1;
    let dist = frames.iter().map(|(_, s)| FrameDistance::new(s)).collect::<Result<Vec<_>>>()?;
    let f = frames.len();

    let u = exec.map(nx * ny, |k| {
        let p = Vec2::new(origin.x + (k % nx) as f64 * spacing, origin.y + (k / nx) as f64 * spacing);
        if frames[0].1.contains(p) || !last.contains(p) {
            return None;
        }
        // first frame containing p; nesting makes containment monotone
        let (mut a, mut b) = (0usize, f - 1);
        while b - a > 1 {
            let mid = (a + b) / 2;
            if frames[mid].1.contains(p) {
                b = mid;
            } else {
                a = mid;
            }
        }
        let start = a.saturating_sub(1).min(f.saturating_sub(4));
        let end = (start + 4).min(f);
        let mut ts = Vec::with_capacity(4);
        let mut ds = Vec::with_capacity(4);
        for q in start..end {
            ts.push(frames[q].0);
            ds.push(dist[q].signed(p));
        }
        // the corrected distance may place the sign change one interval off
        let k = (0..ts.len() - 1)
            .filter(|&k| ds[k] > 0.0 && ds[k + 1] <= 0.0)
            .min_by_key(|&k| (start + k).abs_diff(a))?;
        Some(cubic_root(&ts, &ds, ts[k], ts[k + 1]))
    });
    Ok(ArrivalField { origin, spacing, nx, ny, u })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_sphere;

    #[test]
    fn corrected_distance_on_a_circle() {
        for n in [1, 2] {
            let s = build_sphere(n, 1.0, 64).unwrap();
            let fd = FrameDistance::new(&s).unwrap();
            for k in 0..40 {
                let th = 0.1 + 0.07 * k as f64;
                for r in [0.8, 0.97, 1.05, 1.3] {
                    let p = Vec2::from_polar(r, th);
                    let e = fd.signed(p) - (r - 1.0);
                    assert!(e.abs() < 1e-3 * r, "n={n} r={r} th={th} err={e}");
                }
            }
        }
    }
}
