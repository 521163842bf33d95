//! One-dimensional C² junctions built from the quintic gluing.

use serde::Serialize;

use super::quintic::{quintic_c2_coefficients, QuinticCoeffs};
use crate::error::{Error, Result};

/// Mean curvature of the surface of revolution of a graph `f` (n = 2).
#[inline]
pub fn revolved_graph_h(f: f64, f1: f64, f2: f64) -> f64 {
    let w = 1.0 + f1 * f1;
    (w - f * f2) / (f * w * w.sqrt())
}

/// A sphere of radius `radius` glued to a cylinder of radius `neck`.
///
/// Local coordinate `s` runs along the axis from the sphere center toward
/// the neck. The sphere is kept for `s <= junction`, the quintic zone
/// occupies `[junction, junction + eps]`, the cylinder follows.
/// With `junction = -eps` and `eps = sqrt(radius² - neck²)` the cylinder
/// starts at the sphere's center plane and only a small cap survives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BellJunction {
    pub radius: f64,
    pub neck: f64,
    pub junction: f64,
    pub eps: f64,
    pub coeffs: QuinticCoeffs,
}

impl BellJunction {
    pub fn new(radius: f64, neck: f64, junction: f64, eps: f64) -> Result<Self> {
        if !(radius > 0.0 && neck > 0.0) {
            return Err(Error::InvalidParams("radii must be positive".into()));
        }
        if junction.abs() >= radius {
            return Err(Error::InvalidParams(format!(
                "junction {junction} must lie strictly inside (-R, R) = (-{radius}, {radius})"
            )));
        }
        let w = radius * radius - junction * junction;
        let sw = w.sqrt();
        let g = sw - neck;
        let g1 = junction / sw;
        let g2 = -radius * radius / (w * sw);
        let coeffs = quintic_c2_coefficients(g, g1, g2, eps)?;
        Ok(Self {
            radius,
            neck,
            junction,
            eps,
            coeffs,
        })
    }

    /// The classical capsule end: cylinder from the center plane, small cap beyond.
    pub fn center_plane(radius: f64, neck: f64) -> Result<Self> {
        if !(neck < radius) {
            return Err(Error::InvalidParams("neck radius must be below the sphere radius".into()));
        }
        let eps = (radius * radius - neck * neck).sqrt();
        Self::new(radius, neck, -eps, eps)
    }

    pub fn zone_end(&self) -> f64 {
        self.junction + self.eps
    }

    /// `(f, f_s, f_ss)` of the profile at local coordinate `s` (must be > -radius).
    pub fn jet(&self, s: f64) -> (f64, f64, f64) {
        if s <= self.junction {
            let f = (self.radius * self.radius - s * s).max(0.0).sqrt();
            (f, -s / f, -self.radius * self.radius / (f * f * f))
        } else if s < self.zone_end() {
            let sigma = self.zone_end() - s;
            let (p, p1, p2) = self.coeffs.jet(sigma);
            (self.neck + p, -p1, p2)
        } else {
            (self.neck, 0.0, 0.0)
        }
    }

    pub fn value(&self, s: f64) -> f64 {
        self.jet(s).0
    }

    /// Dense scan of the zone: max of `f·f''`, min of the revolved-graph
    /// mean curvature and where it occurs, and max of `f`.
    pub fn zone_stats(&self, samples: usize) -> ZoneStats {
        let mut st = ZoneStats {
            max_f_fpp: f64::NEG_INFINITY,
            min_h: f64::INFINITY,
            argmin_h: self.junction,
            max_f: f64::NEG_INFINITY,
            max_fpp: f64::NEG_INFINITY,
        };
        for k in 0..=samples {
            let s = self.junction + self.eps * k as f64 / samples as f64;
            let (f, f1, f2) = self.jet(s);
            st.max_f_fpp = st.max_f_fpp.max(f * f2);
            st.max_f = st.max_f.max(f);
            st.max_fpp = st.max_fpp.max(f2);
            let h = revolved_graph_h(f, f1, f2);
            if h < st.min_h {
                st.min_h = h;
                st.argmin_h = s;
            }
        }
        st
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZoneStats {
    pub max_f_fpp: f64,
    pub min_h: f64,
    pub argmin_h: f64,
    pub max_f: f64,
    pub max_fpp: f64,
}

/// Straight tube centerline turning into a circular arc of radius `big_radius`.
///
/// `ξ` runs along the straight line from the junction; the lateral offset is
/// 0 before it, the quintic on `[0, eps]` and `R* - sqrt(R*² - ξ²)` after.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArcGluing {
    pub big_radius: f64,
    pub eps: f64,
    pub coeffs: QuinticCoeffs,
}

impl ArcGluing {
    pub fn new(big_radius: f64, eps: f64) -> Result<Self> {
        if !(eps < big_radius) {
            return Err(Error::GluingOverlap(format!(
                "arc gluing length {eps} must be below the turning radius {big_radius}"
            )));
        }
        let w = big_radius * big_radius - eps * eps;
        let sw = w.sqrt();
        let coeffs = quintic_c2_coefficients(big_radius - sw, eps / sw, big_radius * big_radius / (w * sw), eps)?;
        Ok(Self {
            big_radius,
            eps,
            coeffs,
        })
    }

    /// `(q, q', q'')` of the lateral offset at `ξ`; valid for `ξ < big_radius`.
    pub fn jet(&self, xi: f64) -> (f64, f64, f64) {
        if xi <= 0.0 {
            (0.0, 0.0, 0.0)
        } else if xi < self.eps {
            self.coeffs.jet(xi)
        } else {
            let rr = self.big_radius * self.big_radius;
            let w = rr - xi * xi;
            let sw = w.sqrt();
            (self.big_radius - sw, xi / sw, rr / (w * sw))
        }
    }

    /// Centerline curvature at `ξ`.
    pub fn curvature(&self, xi: f64) -> f64 {
        let (_, q1, q2) = self.jet(xi);
        q2 / (1.0 + q1 * q1).powf(1.5)
    }

    /// Max of `q''` and max of |curvature| over the zone.
    pub fn zone_stats(&self, samples: usize) -> (f64, f64) {
        let mut max_q2 = f64::NEG_INFINITY;
        let mut max_k = 0.0_f64;
        for k in 0..=samples {
            let xi = self.eps * k as f64 / samples as f64;
            max_q2 = max_q2.max(self.jet(xi).2);
            max_k = max_k.max(self.curvature(xi).abs());
        }
        (max_q2, max_k)
    }
}

/// Minimum over the cross-section circle of the mean curvature of a tube of
/// radius `r` about a curve of curvature `kappa`: `1/r - κ/(1 - rκ)`.
pub fn tube_min_h(r: f64, kappa: f64) -> f64 {
    let k = kappa.abs();
    if r * k >= 1.0 {
        return f64::NEG_INFINITY;
    }
    1.0 / r - k / (1.0 - r * k)
}

/// One-sided finite-difference jumps of value, slope and second derivative
/// of `f` across `x0` with step `h` (third-order slopes, second-order
/// curvatures).
pub fn c2_jumps(f: impl Fn(f64) -> f64, x0: f64, h: f64) -> [f64; 3] {
    let l: Vec<f64> = (0..4).map(|k| f(x0 - k as f64 * h)).collect();
    let r: Vec<f64> = (0..4).map(|k| f(x0 + k as f64 * h)).collect();
    let d1l = (11.0 * l[0] - 18.0 * l[1] + 9.0 * l[2] - 2.0 * l[3]) / (6.0 * h);
    let d1r = -(11.0 * r[0] - 18.0 * r[1] + 9.0 * r[2] - 2.0 * r[3]) / (6.0 * h);
    let d2l = (2.0 * l[0] - 5.0 * l[1] + 4.0 * l[2] - l[3]) / (h * h);
    let d2r = (2.0 * r[0] - 5.0 * r[1] + 4.0 * r[2] - r[3]) / (h * h);
    [(l[0] - r[0]).abs(), (d1l - d1r).abs(), (d2l - d2r).abs()]
}
