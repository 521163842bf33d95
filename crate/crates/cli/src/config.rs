//! Experiment configuration.
//!
//! A config is one JSON document:
//!
//! ```json
//! {
//!   "shape": { "builder": "sphere", "n": 2, "R": 1.0 },
//!   "flow": { "t_end": 1.0, "m": 512 },
//!   "audits": [{ "name": "containment" }, { "name": "star-time", "dt_frame": 0.01 }],
//!   "output_dir": "out/sphere",
//!   "seed": 7
//! }
//! ```
//!
//! Command-line flags are applied to the JSON value before it is parsed,
//! so a flag always wins over the file.

use std::fs;
use std::path::{Path, PathBuf};

use imcf_core::flow::FlowConfig;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};
use crate::shapes::ShapeConfig;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub shape: ShapeConfig,
    #[serde(default)]
    pub flow: FlowConfig,
    #[serde(default)]
    pub scheme: Scheme,
    #[serde(default)]
    pub audits: Vec<AuditSpec>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub seed: u64,
    /// Write an SVG snapshot every this many recorded frames (the last
    /// frame is always drawn).
    #[serde(default = "default_svg_every")]
    pub svg_every: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_svg_every() -> usize {
    10
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    #[default]
    Parametric,
    /// Scalar radial-graph integration; needs a `radial` shape.
    Radial,
}

/// One audit with its overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AuditSpec {
    AdmissibilityPreservation {
        #[serde(default = "default_directions")]
        directions: usize,
        #[serde(default = "default_offsets")]
        offsets: usize,
        /// Extra planes drawn at random (seeded) on top of the grid.
        #[serde(default = "default_random_planes")]
        random_planes: usize,
        /// Audit every this many frames.
        #[serde(default = "default_stride")]
        stride: usize,
    },
    GradientEstimate {
        /// Reflection constant; measured on frame 0 when absent.
        #[serde(default)]
        lambda: Option<f64>,
    },
    Containment,
    StarTime {
        /// Frame spacing allowance; the run's record interval when absent.
        #[serde(default)]
        dt_frame: Option<f64>,
    },
    AreaGrowth {
        #[serde(default = "default_area_tol")]
        tolerance: f64,
    },
    Avoidance {
        /// Run directory of the inner flow.
        #[serde(default)]
        inner: Option<PathBuf>,
    },
}

fn default_directions() -> usize {
    16
}
fn default_offsets() -> usize {
    8
}
fn default_random_planes() -> usize {
    8
}
fn default_stride() -> usize {
    10
}
fn default_area_tol() -> f64 {
    1e-3
}

impl AuditSpec {
    /// Parse a bare audit name with default overrides.
    pub fn from_name(name: &str) -> CliResult<Self> {
        serde_json::from_value(serde_json::json!({ "name": name.trim() }))
            .map_err(|e| CliError::Config(format!("audit '{name}': {e}")))
    }

    pub fn all() -> Vec<Self> {
        ["admissibility-preservation", "gradient-estimate", "containment", "star-time", "area-growth"]
            .iter()
            .map(|n| Self::from_name(n).expect("known audit"))
            .collect()
    }
}

/// Parameter sweep: one flow per value of a dotted config path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub param: String,
    pub values: Vec<Value>,
}

/// Flag values that override the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub m: Option<usize>,
    pub t_end: Option<f64>,
    pub seed: Option<u64>,
    pub shape: Option<String>,
    /// Shape parameters as `(key, value)` pairs.
    pub shape_params: Vec<(&'static str, Value)>,
}

pub fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn object<'a>(v: &'a mut Value, key: &str) -> CliResult<&'a mut Map<String, Value>> {
    let root = v.as_object_mut().ok_or_else(|| CliError::Config("config must be a JSON object".into()))?;
    let entry = root.entry(key).or_insert_with(|| Value::Object(Map::new()));
    entry.as_object_mut().ok_or_else(|| CliError::Config(format!("'{key}' must be an object")))
}

/// Set `path` (dot separated) inside `v`, creating objects as needed.
pub fn set_path(v: &mut Value, path: &str, value: Value) -> CliResult<()> {
    let mut cur = v;
    let mut keys = path.split('.').peekable();
    while let Some(k) = keys.next() {
        let obj = cur
            .as_object_mut()
            .ok_or_else(|| CliError::Config(format!("cannot set '{path}': '{k}' is not inside an object")))?;
        if keys.peek().is_none() {
            obj.insert(k.to_string(), value);
            return Ok(());
        }
        cur = obj.entry(k).or_insert_with(|| Value::Object(Map::new()));
    }
    Err(CliError::Config("empty parameter path".into()))
}

impl Overrides {
    pub fn apply(&self, v: &mut Value) -> CliResult<()> {
        if let Some(name) = &self.shape {
            let shape = object(v, "shape")?;
            if shape.get("builder").and_then(Value::as_str) != Some(name) {
                shape.clear();
                shape.insert("builder".into(), Value::String(name.clone()));
            }
        }
        if !self.shape_params.is_empty() {
            let shape = object(v, "shape")?;
            for (k, val) in &self.shape_params {
                shape.insert((*k).to_string(), val.clone());
            }
        }
        if let Some(m) = self.m {
            object(v, "flow")?.insert("m".into(), m.into());
        }
        if let Some(t) = self.t_end {
            object(v, "flow")?.insert("t_end".into(), t.into());
        }
        if let Some(seed) = self.seed {
            set_path(v, "seed", seed.into())?;
        }
        if let Some(out) = &self.out {
            set_path(v, "output_dir", Value::String(out.display().to_string()))?;
        }
        Ok(())
    }
}

impl ExperimentConfig {
    pub fn from_value(v: Value) -> CliResult<Self> {
        let cfg: Self = serde_json::from_value(v).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Load `path` (or start from an empty document) and apply the flags.
    pub fn load(path: Option<&Path>, overrides: &Overrides) -> CliResult<Self> {
        let mut v = match path {
            Some(p) => read_json(p)?,
            None => Value::Object(Map::new()),
        };
        overrides.apply(&mut v)?;
        Self::from_value(v)
    }

    pub fn validate(&self) -> CliResult<()> {
        self.flow.validate().map_err(|e| CliError::Config(e.to_string()))?;
        if self.svg_every == 0 {
            return Err(CliError::Config("svg_every must be positive".into()));
        }
        if self.scheme == Scheme::Radial && !matches!(self.shape, ShapeConfig::Radial { .. }) {
            return Err(CliError::Config("the radial scheme needs a 'radial' shape".into()));
        }
        Ok(())
    }
}
