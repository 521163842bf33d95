use std::fs;
use std::path::PathBuf;

use imcf_core::constructions::{
    build_bean, build_dumbbell, build_peanut, build_sphere, build_torus, BeanSpec, Dumbbell, DumbbellSpec, PeanutSpec,
};
use imcf_core::geometry::io::read_profile;
use imcf_core::geometry::{diameter, inradius, RadialGraph};
use imcf_core::{ProfileSurface, Vec2};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Builder name and parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "builder", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShapeConfig {
    Sphere {
        #[serde(default = "two")]
        n: usize,
        #[serde(rename = "R", default = "one")]
        radius: f64,
    },
    Torus {
        a: f64,
        b: f64,
    },
    /// Default non-round fixture: the egg for n = 1, the long-neck blob for n = 2.
    Bean {
        #[serde(default = "two")]
        n: usize,
    },
    Egg {
        a: f64,
        b: f64,
        k: f64,
    },
    Peanut {
        #[serde(default)]
        preset: PeanutPreset,
    },
    Dumbbell {
        #[serde(default)]
        preset: DumbbellPreset,
        #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
        radius: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        d: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r: Option<f64>,
        #[serde(rename = "R_star", default, skip_serializing_if = "Option::is_none")]
        r_star: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        junction: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        neck_length: Option<f64>,
    },
    /// Star-shaped graph `r(θ) = R (1 + amplitude cos(k θ))` about `center`.
    Radial {
        #[serde(default = "two")]
        n: usize,
        #[serde(rename = "R", default = "one")]
        radius: f64,
        #[serde(default)]
        amplitude: f64,
        #[serde(default = "two")]
        k: usize,
        #[serde(default)]
        center: [f64; 2],
    },
    /// Profile CSV written by `build` (or by hand).
    Profile {
        path: PathBuf,
    },
}

fn one() -> f64 {
    1.0
}

fn two<T: From<u8>>() -> T {
    T::from(2)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeanutPreset {
    #[default]
    Blob,
    Asymmetric,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DumbbellPreset {
    #[default]
    Default,
}

/// A built shape; the dumbbell also keeps its exact composite data.
pub struct Built {
    pub surface: ProfileSurface,
    pub radial: Option<RadialGraph>,
    pub dumbbell: Option<Dumbbell>,
}

impl Built {
    /// Diameter and inradius entering the waiting time. For the dumbbell
    /// these are the composite values, not those of its flow section.
    pub fn deadline_metrics(&self) -> CliResult<(f64, f64)> {
        match &self.dumbbell {
            Some(db) => Ok((db.report.diameter, db.report.inradius)),
            None => Ok((diameter(&self.surface).value, inradius(&self.surface)?.radius)),
        }
    }
}

impl ShapeConfig {
    pub fn build(&self, m: usize) -> CliResult<Built> {
        let plain = |surface| Built { surface, radial: None, dumbbell: None };
        Ok(match self {
            ShapeConfig::Sphere { n, radius } => plain(build_sphere(*n, *radius, m)?),
            ShapeConfig::Torus { a, b } => plain(build_torus(*a, *b, m)?),
            ShapeConfig::Bean { n } => plain(build_bean(&BeanSpec::default_for(*n)?, m)?),
            ShapeConfig::Egg { a, b, k } => plain(build_bean(&BeanSpec::Egg { a: *a, b: *b, k: *k }, m)?),
            ShapeConfig::Peanut { preset } => {
                let spec = match preset {
                    PeanutPreset::Blob => PeanutSpec::blob(),
                    PeanutPreset::Asymmetric => PeanutSpec::asymmetric(),
                };
                plain(build_peanut(&spec, m)?)
            }
            ShapeConfig::Dumbbell { preset: DumbbellPreset::Default, radius, d, r, r_star, junction, neck_length } => {
                let base = DumbbellSpec::default();
                let spec = DumbbellSpec {
                    radius: radius.unwrap_or(base.radius),
                    d: d.unwrap_or(base.d),
                    r: r.unwrap_or(base.r),
                    r_star: r_star.unwrap_or(base.r_star),
                    junction: junction.or(base.junction),
                    neck_length: neck_length.or(base.neck_length),
                    ..base
                };
                let db = build_dumbbell(&spec, m)?;
                Built { surface: db.section.clone(), radial: None, dumbbell: Some(db) }
            }
            ShapeConfig::Radial { n, radius, amplitude, k, center } => {
                let (radius, amplitude, k) = (*radius, *amplitude, *k as f64);
                let samples = if *n == 1 { m } else { m / 2 + 1 };
                let g = RadialGraph::from_fn(*n, Vec2::new(center[0], center[1]), samples, |th| {
                    radius * (1.0 + amplitude * (k * th).cos())
                })?;
                Built { surface: g.to_profile()?, radial: Some(g), dumbbell: None }
            }
            ShapeConfig::Profile { path } => {
                let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                plain(read_profile(&text)?)
            }
        })
    }
}
