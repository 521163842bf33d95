//! Periodic cubic splines used by arclength resampling.

use super::Vec2;

/// Solve a cyclic tridiagonal system in place (Sherman-Morrison on top of
/// the Thomas algorithm). `a` is the sub-diagonal, `b` the diagonal, `c`
/// the super-diagonal; `a[0]` and `c[n-1]` are the corner entries.
fn solve_cyclic(a: &[f64], b: &[f64], c: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = b.len();
    debug_assert!(n >= 3);
    let gamma = -b[0];
    let mut bb = b.to_vec();
    bb[0] -= gamma;
    bb[n - 1] -= a[0] * c[n - 1] / gamma;

    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = c[n - 1];

    let x = thomas(a, &bb, c, rhs);
    let z = thomas(a, &bb, c, &u);
    let fact = (x[0] + a[0] * x[n - 1] / gamma) / (1.0 + z[0] + a[0] * z[n - 1] / gamma);
    x.iter().zip(&z).map(|(xi, zi)| xi - fact * zi).collect()
}

fn thomas(a: &[f64], b: &[f64], c: &[f64], d: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut cp = vec![0.0; n];
    let mut dp = vec![0.0; n];
    cp[0] = c[0] / b[0];
    dp[0] = d[0] / b[0];
    for i in 1..n {
        let m = b[i] - a[i] * cp[i - 1];
        cp[i] = c[i] / m;
        dp[i] = (d[i] - a[i] * dp[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = dp[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = dp[i] - cp[i] * x[i + 1];
    }
    x
}

/// Closed C² cubic spline through `points` in the chord-length parameter.
pub struct PeriodicSpline {
    knots: Vec<f64>,
    points: Vec<Vec2>,
    second: Vec<Vec2>,
    period: f64,
}

impl PeriodicSpline {
    /// Builds the spline; `points` must not repeat the first point at the end.
    pub fn new(points: &[Vec2]) -> Self {
        let n = points.len();
        let h: Vec<f64> = (0..n).map(|i| points[(i + 1) % n].dist(points[i])).collect();
        let mut knots = Vec::with_capacity(n);
        let mut acc = 0.0;
        for hi in &h {
            knots.push(acc);
            acc += hi;
        }
        let period = acc;

        let mut a = vec![0.0; n];
        let mut b = vec![0.0; n];
        let mut c = vec![0.0; n];
        let mut rx = vec![0.0; n];
        let mut ry = vec![0.0; n];
        for i in 0..n {
            let hm = h[(i + n - 1) % n];
            let hp = h[i];
            a[i] = hm;
            b[i] = 2.0 * (hm + hp);
            c[i] = hp;
            let sp = (points[(i + 1) % n] - points[i]) / hp;
            let sm = (points[i] - points[(i + n - 1) % n]) / hm;
            let r = (sp - sm) * 6.0;
            rx[i] = r.x;
            ry[i] = r.y;
        }
        let mx = solve_cyclic(&a, &b, &c, &rx);
        let my = solve_cyclic(&a, &b, &c, &ry);
        let second = mx.into_iter().zip(my).map(|(x, y)| Vec2::new(x, y)).collect();
        Self {
            knots,
            points: points.to_vec(),
            second,
            period,
        }
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Knot parameters (cumulative chord length, starting at 0).
    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Evaluate at parameter `t`, taken modulo the period. `hint` is the
    /// segment to start the search from.
    pub fn eval(&self, t: f64, hint: usize) -> (Vec2, usize) {
        let n = self.points.len();
        let t = t.rem_euclid(self.period);
        let mut i = hint.min(n - 1);
        while i + 1 < n && self.knots[i + 1] <= t {
            i += 1;
        }
        while i > 0 && self.knots[i] > t {
            i -= 1;
        }
        let j = (i + 1) % n;
        let t0 = self.knots[i];
        let t1 = if j == 0 { self.period } else { self.knots[j] };
        let h = t1 - t0;
        let u = t1 - t;
        let v = t - t0;
        let p = self.second[i] * (u * u * u / (6.0 * h))
            + self.second[j] * (v * v * v / (6.0 * h))
            + (self.points[i] / h - self.second[i] * (h / 6.0)) * u
            + (self.points[j] / h - self.second[j] * (h / 6.0)) * v;
        (p, i)
    }
}
