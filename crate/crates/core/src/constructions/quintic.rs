use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `p(x) = A x³ + B x⁴ + C x⁵` on `[0, ε]`: vanishes to second order at 0
/// and matches prescribed value, slope and second derivative at `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuinticCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub eps: f64,
}

/// Closed-form solution of the 3×3 matching system.
pub fn quintic_c2_coefficients(g: f64, g1: f64, g2: f64, eps: f64) -> Result<QuinticCoeffs> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::DegenerateInterval(eps));
    }
    let e2 = eps * eps;
    let e3 = e2 * eps;
    let e4 = e3 * eps;
    let e5 = e4 * eps;
    Ok(QuinticCoeffs {
        a: 10.0 * g / e3 - 4.0 * g1 / e2 + g2 / (2.0 * eps),
        b: -15.0 * g / e4 + 7.0 * g1 / e3 - g2 / e2,
        c: 6.0 * g / e5 - 3.0 * g1 / e4 + g2 / (2.0 * e3),
        eps,
    })
}

/// The matching matrix: rows are value, first and second derivative of
/// `(x³, x⁴, x⁵)` at `x`.
pub fn matching_matrix(x: f64) -> [[f64; 3]; 3] {
    [
        [x.powi(3), x.powi(4), x.powi(5)],
        [3.0 * x * x, 4.0 * x.powi(3), 5.0 * x.powi(4)],
        [6.0 * x, 12.0 * x * x, 20.0 * x.powi(3)],
    ]
}

pub fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

impl QuinticCoeffs {
    pub fn value(&self, x: f64) -> f64 {
        x * x * x * (self.a + x * (self.b + x * self.c))
    }

    pub fn d1(&self, x: f64) -> f64 {
        x * x * (3.0 * self.a + x * (4.0 * self.b + 5.0 * x * self.c))
    }

    pub fn d2(&self, x: f64) -> f64 {
        x * (6.0 * self.a + x * (12.0 * self.b + 20.0 * x * self.c))
    }

    pub fn d3(&self, x: f64) -> f64 {
        6.0 * self.a + x * (24.0 * self.b + 60.0 * x * self.c)
    }

    /// `(p, p', p'')` at `x`.
    pub fn jet(&self, x: f64) -> (f64, f64, f64) {
        (self.value(x), self.d1(x), self.d2(x))
    }
}
