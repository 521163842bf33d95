use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::unit_sphere_area;

/// Integration steps across a bridge.
const STEPS: usize = 4000;
/// Latitude grid of the bracketing scan.
const SCAN: usize = 400;
const MAX_ITER: usize = 200;

/// Axisymmetric minimal surface spanning two balls, tangent to both.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BridgeProfile {
    pub n: usize,
    pub x: Vec<f64>,
    pub f: Vec<f64>,
    pub fp: Vec<f64>,
    /// Tangency angle on the left sphere, measured from its gap-facing pole.
    pub attach_left: f64,
    /// Tangency angle on the right sphere, measured from its gap-facing pole.
    pub attach_right: f64,
    /// Max of value and slope mismatch at the right tangency.
    pub tangency_residual: f64,
    /// Max |H| over interior samples (five-point differences).
    pub h_residual: f64,
    /// `c cosh((x - b)/c)` fit for n = 2 and its max deviation.
    pub catenoid: Option<CatenoidFit>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CatenoidFit {
    pub c: f64,
    pub b: f64,
    pub max_deviation: f64,
}

impl BridgeProfile {
    pub fn x_left(&self) -> f64 {
        self.x[0]
    }

    pub fn x_right(&self) -> f64 {
        *self.x.last().unwrap()
    }

    pub fn max_radius(&self) -> f64 {
        self.f.iter().copied().fold(0.0, f64::max)
    }

    /// Area of the hypersurface of revolution (composite Simpson).
    pub fn area(&self) -> f64 {
        let w = unit_sphere_area(self.n - 1);
        let e = (self.n - 1) as i32;
        let g: Vec<f64> = self
            .f
            .iter()
            .zip(&self.fp)
            .map(|(&f, &fp)| w * f.powi(e) * (1.0 + fp * fp).sqrt())
            .collect();
        simpson(&g, self.x[1] - self.x[0])
    }

    /// Height at `x` by linear interpolation; `None` outside the bridge.
    pub fn height_at(&self, x: f64) -> Option<f64> {
        if x < self.x_left() || x > self.x_right() {
            return None;
        }
        let h = self.x[1] - self.x[0];
        let i = (((x - self.x[0]) / h) as usize).min(self.x.len() - 2);
        let t = (x - self.x[i]) / h;
        Some(self.f[i] * (1.0 - t) + self.f[i + 1] * t)
    }

    /// Profile in the `imcf-bridge` CSV layout (`x,f` rows).
    pub fn to_csv(&self) -> String {
        let mut s = format!("# imcf-bridge v1, n={}\nx,f\n", self.n);
        for (x, f) in self.x.iter().zip(&self.f) {
            s.push_str(&format!("{},{}\n", crate::json::format_f64(*x), crate::json::format_f64(*f)));
        }
        s
    }
}

fn simpson(g: &[f64], h: f64) -> f64 {
    let n = g.len() - 1;
    if n % 2 == 1 {
        // trapezoid on the last interval keeps the rule composite
        return simpson(&g[..n], h) + 0.5 * h * (g[n - 1] + g[n]);
    }
    let mut s = g[0] + g[n];
    for (i, v) in g.iter().enumerate().take(n).skip(1) {
        s += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    s * h / 3.0
}

/// Two balls on the x-axis with a gap `d` between them.
#[derive(Debug, Clone, Copy)]
struct Balls {
    rl: f64,
    rr: f64,
    cl: f64,
    cr: f64,
    n: usize,
}

impl Balls {
    fn new(rl: f64, rr: f64, d: f64, n: usize) -> Self {
        Self {
            rl,
            rr,
            cl: -(rl + 0.5 * d),
            cr: rr + 0.5 * d,
            n,
        }
    }

    fn start(&self, theta: f64) -> (f64, f64, f64) {
        let (s, c) = theta.sin_cos();
        (self.cl + self.rl * c, self.rl * s, -c / s)
    }

    /// Right sphere height and slope at `x` (inside its x-range).
    fn right_sphere(&self, x: f64) -> Option<(f64, f64)> {
        let u = x - self.cr;
        let w = self.rr * self.rr - u * u;
        if w <= 0.0 {
            return None;
        }
        let s = w.sqrt();
        Some((s, -u / s))
    }

    fn rhs(&self, f: f64, fp: f64) -> f64 {
        (self.n - 1) as f64 * (1.0 + fp * fp) / f
    }

    /// RK4 with `steps` uniform steps from the left tangency to `x_end`.
    /// Returns the trajectory, or `None` if it leaves the region of interest.
    fn integrate(&self, theta: f64, x_end: f64, steps: usize, cap: f64) -> Option<Vec<(f64, f64, f64)>> {
        let (x0, mut f, mut fp) = self.start(theta);
        let h = (x_end - x0) / steps as f64;
        if !(h > 0.0) {
            return None;
        }
        let mut out = Vec::with_capacity(steps + 1);
        out.push((x0, f, fp));
        for k in 0..steps {
            let k1f = fp;
            let k1p = self.rhs(f, fp);
            let k2f = fp + 0.5 * h * k1p;
            let k2p = self.rhs(f + 0.5 * h * k1f, k2f);
            let k3f = fp + 0.5 * h * k2p;
            let k3p = self.rhs(f + 0.5 * h * k2f, k3f);
            let k4f = fp + h * k3p;
            let k4p = self.rhs(f + h * k3f, k4f);
            f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
            fp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            if !(f > 0.0) || f > cap || !fp.is_finite() {
                return None;
            }
            out.push((x0 + (k + 1) as f64 * h, f, fp));
        }
        Some(out)
    }

    /// Smallest clearance between the trajectory and the right sphere and
    /// where it occurs; positive means the bridge passes above.
    fn gap(&self, theta: f64) -> (f64, f64) {
        let cap = 4.0 * self.rl.max(self.rr);
        let (x0, f0, mut fp) = self.start(theta);
        let x_end = self.cr + self.rr;
        let steps = 2 * STEPS;
        let h = (x_end - x0) / steps as f64;
        let mut f = f0;
        let mut best = (f64::INFINITY, x_end);
        for k in 0..steps {
            let x = x0 + k as f64 * h;
            if let Some((s, _)) = self.right_sphere(x) {
                if f - s < best.0 {
                    best = (f - s, x);
                }
            }
            let k1f = fp;
            let k1p = self.rhs(f, fp);
            let k2f = fp + 0.5 * h * k1p;
            let k2p = self.rhs(f + 0.5 * h * k1f, k2f);
            let k3f = fp + 0.5 * h * k2p;
            let k3p = self.rhs(f + 0.5 * h * k2f, k3f);
            let k4f = fp + h * k3p;
            let k4p = self.rhs(f + h * k3f, k4f);
            f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
            fp += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            if !(f > 0.0) || !fp.is_finite() {
                return (f64::NEG_INFINITY, x);
            }
            if f > cap {
                break;
            }
        }
        best
    }

    fn residual(&self, theta: f64, x_end: f64) -> Option<[f64; 2]> {
        let traj = self.integrate(theta, x_end, STEPS, f64::INFINITY)?;
        let &(x, f, fp) = traj.last().unwrap();
        let (s, sp) = self.right_sphere(x)?;
        Some([f - s, fp - sp])
    }

    /// Damped Newton on (left latitude, right abscissa).
    fn polish(&self, mut theta: f64, mut x_end: f64) -> Result<(f64, f64, f64)> {
        let norm = |r: [f64; 2]| r[0].abs().max(r[1].abs());
        let mut r = self
            .residual(theta, x_end)
            .ok_or_else(|| Error::NoConvergence("bridge shooting left the domain".into()))?;
        for _ in 0..MAX_ITER {
            if norm(r) < 1e-11 {
                break;
            }
            let dt = 1e-7;
            let dx = 1e-7;
            let (rtp, rtm, rxp, rxm) = match (
                self.residual(theta + dt, x_end),
                self.residual(theta - dt, x_end),
                self.residual(theta, x_end + dx),
                self.residual(theta, x_end - dx),
            ) {
                (Some(a), Some(b), Some(c), Some(d)) => (a, b, c, d),
                _ => return Err(Error::NoConvergence("bridge Jacobian left the domain".into())),
            };
            let j = [
                [(rtp[0] - rtm[0]) / (2.0 * dt), (rxp[0] - rxm[0]) / (2.0 * dx)],
                [(rtp[1] - rtm[1]) / (2.0 * dt), (rxp[1] - rxm[1]) / (2.0 * dx)],
            ];
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            if det == 0.0 || !det.is_finite() {
                return Err(Error::NoConvergence("singular bridge Jacobian".into()));
            }
            let st = (j[1][1] * r[0] - j[0][1] * r[1]) / det;
            let sx = (-j[1][0] * r[0] + j[0][0] * r[1]) / det;
            let mut lambda = 1.0;
            loop {
                let (t2, x2) = (theta - lambda * st, x_end - lambda * sx);
                if let Some(r2) = self.residual(t2, x2) {
                    if norm(r2) < norm(r) {
                        theta = t2;
                        x_end = x2;
                        r = r2;
                        break;
                    }
                }
                lambda *= 0.5;
                if lambda < 1e-6 {
                    return Ok((theta, x_end, norm(r)));
                }
            }
        }
        Ok((theta, x_end, norm(r)))
    }

    fn build(&self, theta: f64, x_end: f64, tangency_residual: f64) -> Option<BridgeProfile> {
        let traj = self.integrate(theta, x_end, STEPS, f64::INFINITY)?;
        let x: Vec<f64> = traj.iter().map(|t| t.0).collect();
        let f: Vec<f64> = traj.iter().map(|t| t.1).collect();
        let fp: Vec<f64> = traj.iter().map(|t| t.2).collect();
        let h = x[1] - x[0];
        let mut h_res = 0.0_f64;
        for i in 2..f.len() - 2 {
            let d1 = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
            let d2 = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h * h);
            let w = 1.0 + d1 * d1;
            let hm = d2 / (w * w.sqrt()) - (self.n - 1) as f64 / (f[i] * w.sqrt());
            h_res = h_res.max(hm.abs());
        }
        let catenoid = (self.n == 2).then(|| {
            let c = f[0] / (1.0 + fp[0] * fp[0]).sqrt();
            let b = x[0] - c * fp[0].asinh();
            let max_deviation = x
                .iter()
                .zip(&f)
                .map(|(&xi, &fi)| (fi - c * ((xi - b) / c).cosh()).abs())
                .fold(0.0, f64::max);
            CatenoidFit { c, b, max_deviation }
        });
        let xr = *x.last().unwrap();
        Some(BridgeProfile {
            n: self.n,
            x,
            f,
            fp,
            attach_left: theta,
            attach_right: ((self.cr - xr) / self.rr).clamp(-1.0, 1.0).acos(),
            tangency_residual,
            h_residual: h_res,
            catenoid,
        })
    }

    /// Removed spherical cap area between the gap pole and angle `theta`.
    fn cap_area(&self, radius: f64, theta: f64) -> f64 {
        let w = unit_sphere_area(self.n - 1) * radius.powi(self.n as i32);
        if self.n == 2 {
            return w * (1.0 - theta.cos());
        }
        let k = 2000;
        let g: Vec<f64> = (0..=k)
            .map(|i| (theta * i as f64 / k as f64).sin().powi((self.n - 1) as i32))
            .collect();
        w * simpson(&g, theta / k as f64)
    }
}

/// Every tangent bridge between balls of radii `rl`, `rr` with gap `d`,
/// paired with `bridge area - removed cap areas`.
pub(crate) fn tangent_bridges(rl: f64, rr: f64, d: f64, n: usize) -> Result<Vec<(BridgeProfile, f64)>> {
    if !(d > 0.0) || !(rl > 0.0 && rr > 0.0) {
        return Err(Error::InvalidParams(format!("bridge needs d > 0 and positive radii (d = {d})")));
    }
    if n < 2 {
        return Err(Error::InvalidParams("bridges need n >= 2".into()));
    }
    let balls = Balls::new(rl, rr, d, n);
    let lo = 1e-3;
    let thetas: Vec<f64> = (0..=SCAN).map(|k| lo + (FRAC_PI_2 - lo) * k as f64 / SCAN as f64).collect();
    let gaps: Vec<(f64, f64)> = thetas.iter().map(|&t| balls.gap(t)).collect();
    let mut out = Vec::new();
    for k in 0..SCAN {
        let (g0, g1) = (gaps[k].0, gaps[k + 1].0);
        if !(g0.is_finite() && g1.is_finite()) || (g0 > 0.0) == (g1 > 0.0) {
            continue;
        }
        let (mut a, mut b) = (thetas[k], thetas[k + 1]);
        let mut ga = g0;
        for _ in 0..60 {
            let mid = 0.5 * (a + b);
            let gm = balls.gap(mid).0;
            if (gm > 0.0) == (ga > 0.0) {
                a = mid;
                ga = gm;
            } else {
                b = mid;
            }
        }
        let theta = 0.5 * (a + b);
        let x_guess = balls.gap(theta).1;
        let (theta, x_end, res) = balls.polish(theta, x_guess)?;
        if res > 1e-10 {
            return Err(Error::NoConvergence(format!("bridge tangency residual {res:e} after polishing")));
        }
        if let Some(bp) = balls.build(theta, x_end, res) {
            let caps = balls.cap_area(rl, bp.attach_left) + balls.cap_area(rr, bp.attach_right);
            let margin = bp.area() - caps;
            out.push((bp, margin));
        }
    }
    Ok(out)
}

/// Minimal-surface bridge between two balls; `None` when no tangent
/// bridge exists. With several candidates the one giving the smallest
/// hull area is returned.
pub fn minimal_bridge(rl: f64, rr: f64, d: f64, n: usize) -> Result<Option<BridgeProfile>> {
    Ok(best(tangent_bridges(rl, rr, d, n)?).map(|(b, _)| b))
}

pub(crate) fn best(cands: Vec<(BridgeProfile, f64)>) -> Option<(BridgeProfile, f64)> {
    cands.into_iter().min_by(|a, b| a.1.total_cmp(&b.1))
}
