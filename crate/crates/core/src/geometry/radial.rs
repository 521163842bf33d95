use super::{ProfileCurve, ProfileSurface, Vec2};
use crate::error::{Error, Result};

/// Star-shaped surface `r(θ)` about `center`.
///
/// `n = 1`: `θ_k = k Δθ` on `[0, 2π)`, periodic. `n = 2`: colatitude from the
/// positive x-axis, `θ_k = k Δθ` on `[0, π]` with both ends included and
/// even reflection across them; `center` lies on the axis.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGraph {
    n: usize,
    center: Vec2,
    r: Vec<f64>,
}

impl RadialGraph {
    pub fn new(n: usize, center: Vec2, r: Vec<f64>) -> Result<Self> {
        if !(1..=2).contains(&n) {
            return Err(Error::InvalidParams("radial graphs support n = 1 and n = 2".into()));
        }
        if r.len() < 8 {
            return Err(Error::InvalidParams("radial graph needs at least 8 samples".into()));
        }
        if let Some(i) = r.iter().position(|&v| !(v > 0.0)) {
            return Err(Error::InvalidGeometry(format!("radius sample {i} is not positive")));
        }
        if n == 2 && center.y != 0.0 {
            return Err(Error::InvalidParams("axisymmetric radial graphs need an on-axis center".into()));
        }
        Ok(Self { n, center, r })
    }

    /// Sample `r(θ)` on the grid for this dimension.
    pub fn from_fn(n: usize, center: Vec2, m: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let dtheta = Self::step_for(n, m);
        Self::new(n, center, (0..m).map(|k| f(k as f64 * dtheta)).collect())
    }

    fn step_for(n: usize, m: usize) -> f64 {
        if n == 1 {
            std::f64::consts::TAU / m as f64
        } else {
            std::f64::consts::PI / (m - 1) as f64
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn center(&self) -> Vec2 {
        self.center
    }

    pub fn radii(&self) -> &[f64] {
        &self.r
    }

    pub fn dtheta(&self) -> f64 {
        Self::step_for(self.n, self.r.len())
    }

    pub fn theta(&self, k: usize) -> f64 {
        k as f64 * self.dtheta()
    }

    pub(crate) fn with_radii(&self, r: Vec<f64>) -> Self {
        Self { n: self.n, center: self.center, r }
    }

    /// Radius at index `k`, extended periodically (`n = 1`) or by even
    /// reflection at the poles (`n = 2`).
    #[inline]
    pub fn at(&self, k: isize) -> f64 {
        let m = self.r.len() as isize;
        if self.n == 1 {
            self.r[k.rem_euclid(m) as usize]
        } else {
            let period = 2 * (m - 1);
            let mut j = k.rem_euclid(period);
            if j >= m {
                j = period - j;
            }
            self.r[j as usize]
        }
    }

    pub fn to_profile(&self) -> Result<ProfileSurface> {
        let pts: Vec<Vec2> = (0..self.r.len())
            .map(|k| self.center + Vec2::from_polar(self.r[k], self.theta(k)))
            .collect();
        let curve = if self.n == 1 {
            ProfileCurve::closed(pts)?
        } else {
            ProfileCurve::anchored(pts)?
        };
        ProfileSurface::single(self.n, curve)
    }

    /// Mean radius weighted by the angular measure.
    pub fn mean_radius(&self) -> f64 {
        if self.n == 1 {
            self.r.iter().sum::<f64>() / self.r.len() as f64
        } else {
            let m = self.r.len();
            let mut num = 0.0;
            let mut den = 0.0;
            for k in 0..m {
                let w = self.theta(k).sin() * if k == 0 || k == m - 1 { 0.5 } else { 1.0 };
                num += w * self.r[k];
                den += w;
            }
            num / den
        }
    }
}
