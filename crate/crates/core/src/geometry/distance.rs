use super::{ProfileSurface, Vec2};
use crate::par::Exec;

#[inline]
pub(crate) fn point_segment(p: Vec2, a: Vec2, b: Vec2) -> (f64, Vec2) {
    let ab = b - a;
    let len2 = ab.norm_sq();
    let t = if len2 > 0.0 { ((p - a).dot(ab) / len2).clamp(0.0, 1.0) } else { 0.0 };
    let q = a + ab * t;
    (p.dist(q), q)
}

/// Uniform-grid bucket index over the segments of a surface, answering
/// nearest-segment queries in expected constant time.
#[derive(Debug, Clone)]
pub struct DistanceIndex {
    segs: Vec<(Vec2, Vec2)>,
    origin: Vec2,
    cell: f64,
    nx: usize,
    ny: usize,
    buckets: Vec<Vec<u32>>,
}

impl DistanceIndex {
    pub fn new(surface: &ProfileSurface) -> Self {
        let segs: Vec<(Vec2, Vec2)> = surface
            .curves()
            .iter()
            .flat_map(|c| (0..c.segment_count()).map(move |i| c.segment(i)))
            .collect();
        Self::from_segments(segs)
    }

    pub fn from_segments(segs: Vec<(Vec2, Vec2)>) -> Self {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut total = 0.0;
        for &(a, b) in &segs {
            lo.x = lo.x.min(a.x.min(b.x));
            lo.y = lo.y.min(a.y.min(b.y));
            hi.x = hi.x.max(a.x.max(b.x));
            hi.y = hi.y.max(a.y.max(b.y));
            total += a.dist(b);
        }
        let mean = total / segs.len().max(1) as f64;
        let extent = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
        let cell = (2.0 * mean).max(extent / 512.0).max(1e-12);
        let nx = ((hi.x - lo.x) / cell).floor() as usize + 1;
        let ny = ((hi.y - lo.y) / cell).floor() as usize + 1;
        let mut buckets = vec![Vec::new(); nx * ny];
        for (k, &(a, b)) in segs.iter().enumerate() {
            let i0 = ((a.x.min(b.x) - lo.x) / cell).floor() as usize;
            let i1 = (((a.x.max(b.x) - lo.x) / cell).floor() as usize).min(nx - 1);
            let j0 = ((a.y.min(b.y) - lo.y) / cell).floor() as usize;
            let j1 = (((a.y.max(b.y) - lo.y) / cell).floor() as usize).min(ny - 1);
            for j in j0..=j1 {
                for i in i0..=i1 {
                    buckets[j * nx + i].push(k as u32);
                }
            }
        }
        Self {
            segs,
            origin: lo,
            cell,
            nx,
            ny,
            buckets,
        }
    }

    pub fn segments(&self) -> &[(Vec2, Vec2)] {
        &self.segs
    }

    fn cell_of(&self, p: Vec2) -> (isize, isize) {
        let i = ((p.x - self.origin.x) / self.cell).floor() as isize;
        let j = ((p.y - self.origin.y) / self.cell).floor() as isize;
        (i.clamp(0, self.nx as isize - 1), j.clamp(0, self.ny as isize - 1))
    }

    /// Distance from `p` to the nearest segment, the segment index and the
    /// closest point on it.
    pub fn nearest(&self, p: Vec2) -> (f64, usize, Vec2) {
        let (ci, cj) = self.cell_of(p);
        let (nx, ny) = (self.nx as isize, self.ny as isize);
        let mut best = (f64::INFINITY, usize::MAX, p);
        let mut ring = 0isize;
        loop {
            let mut visit = |i: isize, j: isize| {
                for &k in &self.buckets[j as usize * self.nx + i as usize] {
                    let (a, b) = self.segs[k as usize];
                    let (d, q) = point_segment(p, a, b);
                    if d < best.0 || (d == best.0 && (k as usize) < best.1) {
                        best = (d, k as usize, q);
                    }
                }
            };
            let (i_lo, i_hi) = ((ci - ring).max(0), (ci + ring).min(nx - 1));
            let (j_lo, j_hi) = ((cj - ring).max(0), (cj + ring).min(ny - 1));
            if ring == 0 {
                visit(ci, cj);
            } else {
                for i in i_lo..=i_hi {
                    if cj - ring >= 0 {
                        visit(i, cj - ring);
                    }
                    if cj + ring < ny {
                        visit(i, cj + ring);
                    }
                }
                for j in (cj - ring + 1).max(0)..=(cj + ring - 1).min(ny - 1) {
                    if ci - ring >= 0 {
                        visit(ci - ring, j);
                    }
                    if ci + ring < nx {
                        visit(ci + ring, j);
                    }
                }
            }
            // Lower bound on the distance to any cell outside the visited
            // square, over the sides that still have cells beyond them.
            let mut bound = f64::INFINITY;
            if i_lo > 0 {
                bound = bound.min(p.x - (self.origin.x + i_lo as f64 * self.cell));
            }
            if i_hi < nx - 1 {
                bound = bound.min(self.origin.x + (i_hi + 1) as f64 * self.cell - p.x);
            }
            if j_lo > 0 {
                bound = bound.min(p.y - (self.origin.y + j_lo as f64 * self.cell));
            }
            if j_hi < ny - 1 {
                bound = bound.min(self.origin.y + (j_hi + 1) as f64 * self.cell - p.y);
            }
            if bound == f64::INFINITY || best.0 <= bound {
                break;
            }
            ring += 1;
        }
        best
    }

    pub fn distance(&self, p: Vec2) -> f64 {
        self.nearest(p).0
    }

    /// Indices of segments whose buckets intersect the box `[lo, hi]`.
    pub(crate) fn candidates(&self, lo: Vec2, hi: Vec2, out: &mut Vec<u32>) {
        out.clear();
        let (i0, j0) = self.cell_of(lo);
        let (i1, j1) = self.cell_of(hi);
        for j in j0..=j1 {
            for i in i0..=i1 {
                out.extend_from_slice(&self.buckets[j as usize * self.nx + i as usize]);
            }
        }
        out.sort_unstable();
        out.dedup();
    }
}

/// Signed distance to the boundary sampled on a regular grid (negative
/// inside), with bilinear lookup. For axisymmetric surfaces the grid covers
/// the meridian half-plane `y >= 0` and lookups fold `y` to `|y|`.
#[derive(Debug, Clone)]
pub struct SignedDistanceGrid {
    origin: Vec2,
    spacing: f64,
    nx: usize,
    ny: usize,
    values: Vec<f64>,
    axisymmetric: bool,
    index: DistanceIndex,
    surface: ProfileSurface,
}

impl SignedDistanceGrid {
    /// `cells` is the number of cells along the longer side of the padded box.
    pub fn new(surface: &ProfileSurface, cells: usize, exec: Exec) -> Self {
        let (lo, hi) = surface.bounding_box();
        let ext = (hi.x - lo.x).max(hi.y - lo.y);
        let pad = 0.05 * ext + 1e-9;
        let axisymmetric = surface.is_axisymmetric();
        let origin = Vec2::new(lo.x - pad, if axisymmetric { 0.0 } else { lo.y - pad });
        let top = hi.y + pad;
        let width = hi.x + pad - origin.x;
        let height = top - origin.y;
        let spacing = width.max(height) / cells.max(8) as f64;
        let nx = (width / spacing).ceil() as usize + 1;
        let ny = (height / spacing).ceil() as usize + 1;
        let index = DistanceIndex::new(surface);
        let values = exec.map(nx * ny, |k| {
            let p = Vec2::new(origin.x + (k % nx) as f64 * spacing, origin.y + (k / nx) as f64 * spacing);
            let d = index.distance(p);
            if surface.contains(p) {
                -d
            } else {
                d
            }
        });
        Self {
            origin,
            spacing,
            nx,
            ny,
            values,
            axisymmetric,
            index,
            surface: surface.clone(),
        }
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn node(&self, i: usize, j: usize) -> Vec2 {
        Vec2::new(self.origin.x + i as f64 * self.spacing, self.origin.y + j as f64 * self.spacing)
    }

    pub fn node_value(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.nx + i]
    }

    /// Exact signed distance, bypassing the grid.
    pub fn exact(&self, p: Vec2) -> f64 {
        let q = if self.axisymmetric { Vec2::new(p.x, p.y.abs()) } else { p };
        let d = self.index.distance(q);
        if self.surface.contains(q) {
            -d
        } else {
            d
        }
    }

    /// Interpolated signed distance; falls back to the exact value outside the grid.
    pub fn eval(&self, p: Vec2) -> f64 {
        let q = if self.axisymmetric { Vec2::new(p.x, p.y.abs()) } else { p };
        let Some(interp) = self.bilinear(q) else {
            return self.exact(q);
        };
        // Close to the boundary the sign must agree with the exact test.
        if interp.abs() < 2.0 * self.spacing {
            self.exact(q)
        } else {
            interp
        }
    }

    /// Plain bilinear interpolation, `None` outside the grid.
    pub fn bilinear(&self, p: Vec2) -> Option<f64> {
        let q = if self.axisymmetric { Vec2::new(p.x, p.y.abs()) } else { p };
        let u = (q.x - self.origin.x) / self.spacing;
        let v = (q.y - self.origin.y) / self.spacing;
        if !(u >= 0.0 && v >= 0.0 && u < (self.nx - 1) as f64 && v < (self.ny - 1) as f64) {
            return None;
        }
        let i = u.floor() as usize;
        let j = v.floor() as usize;
        let fu = u - i as f64;
        let fv = v - j as f64;
        let v00 = self.values[j * self.nx + i];
        let v10 = self.values[j * self.nx + i + 1];
        let v01 = self.values[(j + 1) * self.nx + i];
        let v11 = self.values[(j + 1) * self.nx + i + 1];
        Some((1.0 - fv) * ((1.0 - fu) * v00 + fu * v10) + fv * ((1.0 - fu) * v01 + fu * v11))
    }

    /// Lower bound on the distance from `p` to the gridded box (zero inside).
    pub fn box_distance(&self, p: Vec2) -> f64 {
        let q = if self.axisymmetric { Vec2::new(p.x, p.y.abs()) } else { p };
        let hi = self.node(self.nx - 1, self.ny - 1);
        let dx = (self.origin.x - q.x).max(q.x - hi.x).max(0.0);
        let dy = (self.origin.y - q.y).max(q.y - hi.y).max(0.0);
        dx.hypot(dy)
    }
}

/// Symmetric Hausdorff distance between the sampled boundaries.
pub fn hausdorff_distance(a: &ProfileSurface, b: &ProfileSurface) -> f64 {
    let ia = DistanceIndex::new(a);
    let ib = DistanceIndex::new(b);
    let ab = a.points().map(|p| ib.distance(p)).fold(0.0, f64::max);
    let ba = b.points().map(|p| ia.distance(p)).fold(0.0, f64::max);
    ab.max(ba)
}
