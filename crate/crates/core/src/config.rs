//! JSON job configuration shared by the command-line tool and the examples.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "system": "kk",
//!   "left": {"rho": 1.0, "u": 2.0},
//!   "right": {"rho": 1.0, "u": 0.0},
//!   "mu": 1.0,
//!   "friction": {"kind": "constant", "a": 1.0},
//!   "t": 1.0
//! }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::friction::FrictionTerm;
use crate::fvm::{FvmConfig, Scheme};
use crate::state::State;
use crate::weak::TestFunction;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum System {
    Kk,
    Pressureless,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FrictionSpec {
    #[default]
    Zero,
    Constant {
        a: f64,
    },
    #[serde(rename = "degenerate", alias = "gradually_degenerate")]
    GraduallyDegenerate {
        theta: f64,
        beta: f64,
    },
}

impl FrictionSpec {
    pub fn build(&self) -> Result<FrictionTerm> {
        match *self {
            FrictionSpec::Zero => Ok(FrictionTerm::zero()),
            FrictionSpec::Constant { a } => FrictionTerm::constant(a),
            FrictionSpec::GraduallyDegenerate { theta, beta } => FrictionTerm::gradually_degenerate(theta, beta),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidualSpec {
    #[serde(default = "default_orders")]
    pub orders: Vec<usize>,
    /// When absent, five test functions are placed across the waves at `t = 1`.
    #[serde(default)]
    pub test_functions: Option<Vec<TestFunction>>,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
}

fn default_orders() -> Vec<usize> {
    vec![8, 16, 32, 64]
}

fn default_threshold() -> f64 {
    crate::weak::RESIDUAL_THRESHOLD
}

impl Default for ResidualSpec {
    fn default() -> Self {
        Self { orders: default_orders(), test_functions: None, threshold: default_threshold() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StudyKind {
    /// `mu_k = mu0 (1 + 2^-k)`.
    Critical,
    /// `mu_k = 2^-k`.
    Vanishing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitSpec {
    pub kind: StudyKind,
    #[serde(default = "default_terms")]
    pub terms: u32,
    /// Explicit sequence; overrides `terms`.
    #[serde(default)]
    pub mu_values: Option<Vec<f64>>,
}

fn default_terms() -> u32 {
    crate::limits::DEFAULT_TERMS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FvmSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    #[serde(default = "default_cfl")]
    pub cfl: f64,
    pub t_end: f64,
    #[serde(default = "default_rho_floor")]
    pub rho_floor: f64,
    #[serde(default)]
    pub scheme: Scheme,
    /// Snapshot times; `[t_end]` when empty.
    #[serde(default)]
    pub snapshots: Vec<f64>,
    /// Cell counts for a convergence ladder at `t_end`.
    #[serde(default)]
    pub ladder: Vec<usize>,
}

fn default_cfl() -> f64 {
    0.5
}

fn default_rho_floor() -> f64 {
    1e-12
}

impl FvmSpec {
    pub fn config(&self, n_cells: usize) -> FvmConfig {
        FvmConfig {
            x_min: self.x_min,
            x_max: self.x_max,
            n_cells,
            cfl: self.cfl,
            t_end: self.t_end,
            rho_floor: self.rho_floor,
            scheme: self.scheme,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub schema: u32,
    pub system: System,
    pub left: State,
    pub right: State,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default)]
    pub friction: FrictionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<ResidualSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit_study: Option<LimitSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fvm: Option<FvmSpec>,
}

/// What a run writes next to its outputs; it can be fed back as a config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub schema: u32,
    pub command: String,
    pub version: String,
    pub config: JobConfig,
    pub files: Vec<String>,
}

impl JobConfig {
    /// Parses a config, or the `config` field of a manifest.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let cfg = if value.get("config").is_some() {
            serde_json::from_str::<Manifest>(text).map_err(|e| Error::Config(format!("manifest: {e}")))?.config
        } else {
            serde_json::from_str::<JobConfig>(text).map_err(|e| Error::Config(e.to_string()))?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.schema != SCHEMA_VERSION {
            return bad(format!("unsupported schema {}, expected {SCHEMA_VERSION}", self.schema));
        }
        match (self.system, self.mu) {
            (System::Kk, None) => return bad("field `mu` is required when system = \"kk\"".into()),
            (System::Pressureless, Some(_)) => {
                return bad("field `mu` must be absent when system = \"pressureless\"".into())
            }
            _ => {}
        }
        let wrap = |field: &str, r: Result<()>| r.map_err(|e| Error::Config(format!("{field}: {e}")));
        wrap("left", self.left.validate())?;
        wrap("right", self.right.validate())?;
        if let Some(mu) = self.mu {
            if !(mu > 0.0) || !mu.is_finite() {
                return bad(format!("mu: must be finite and > 0, got {mu}"));
            }
        }
        wrap("friction", self.friction.build().map(|_| ()))?;
        if let Some(t) = self.t {
            if !(t > 0.0) || !t.is_finite() {
                return bad(format!("t: must be finite and > 0, got {t}"));
            }
        }
        if let Some(g) = &self.grid {
            if !(g.x_min < g.x_max) || g.n < 2 {
                return bad("grid: need x_min < x_max and n >= 2".into());
            }
        }
        if let Some(f) = &self.fvm {
            wrap("fvm", f.config(f.n_cells).validate())?;
            for &n in &f.ladder {
                wrap("fvm.ladder", f.config(n).validate())?;
            }
        }
        Ok(())
    }

    pub fn mu_value(&self) -> f64 {
        self.mu.unwrap_or(0.0)
    }
}
