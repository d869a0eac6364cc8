//! Run configuration: JSON schema, validation, and model construction.
//!
//! A configuration names a model (one of the lattice builders, or a custom
//! stabilizer model spelled out generator by generator) and optionally a
//! coupling grid for sweeps and a bench block. Builder couplings are given as
//! the products `βλ_A`, `βλ_B`; the literal string `"inf"` means the
//! zero-temperature / infinite-coupling limit and maps to `t = 1`.

use std::path::Path;

use serde::Deserialize;

use negspec::{
    build_2d_torus, build_boundary_2d, build_boundary_3d, build_boundary_4d, Fragment,
    StabilizerModel,
};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Required for every task except `bench`.
    #[serde(default)]
    pub model: Option<ModelConfig>,
    #[serde(default)]
    pub grid: Option<GridConfig>,
    /// Relative threshold below which a binegativity sector counts as
    /// negative; defaults to the engine's value. The `--tolerance` flag wins.
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub bench: Option<BenchConfig>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: RunConfig =
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        if let Some(tol) = config.tolerance {
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(CliError::Config(format!(
                    "tolerance must be finite and >= 0, got {tol}"
                )));
            }
        }
        Ok(config)
    }
}

/// A coupling that is either a number or the literal string `"inf"`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum Coupling {
    Value(f64),
    Word(CouplingWord),
}

#[derive(Debug, Clone, Copy, Deserialize)]
pub enum CouplingWord {
    #[serde(rename = "inf")]
    Infinite,
}

impl Coupling {
    pub fn beta_lambda(self) -> Result<f64, CliError> {
        match self {
            Coupling::Value(v) if v.is_nan() => {
                Err(CliError::Config("coupling must not be NaN".into()))
            }
            Coupling::Value(v) => Ok(v),
            Coupling::Word(CouplingWord::Infinite) => Ok(f64::INFINITY),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type")]
pub enum ModelConfig {
    #[serde(rename = "toric2d_boundary")]
    Toric2dBoundary {
        #[serde(rename = "L")]
        l: usize,
        beta_lambda_a: Coupling,
        beta_lambda_b: Coupling,
    },
    #[serde(rename = "toric3d_boundary")]
    Toric3dBoundary {
        #[serde(rename = "L")]
        l: usize,
        beta_lambda_a: Coupling,
        beta_lambda_b: Coupling,
    },
    #[serde(rename = "toric4d_boundary")]
    Toric4dBoundary {
        #[serde(rename = "L", default)]
        l: Option<usize>,
        #[serde(default)]
        fragment: Option<[usize; 3]>,
        beta_lambda_a: Coupling,
        beta_lambda_b: Coupling,
    },
    #[serde(rename = "toric2d_torus")]
    Toric2dTorus {
        #[serde(rename = "L")]
        l: usize,
        #[serde(default)]
        cut: Option<usize>,
        beta_lambda_a: Coupling,
        beta_lambda_b: Coupling,
    },
    #[serde(rename = "custom")]
    Custom {
        #[serde(flatten)]
        doc: serde_json::Value,
    },
}

impl ModelConfig {
    /// Short human/machine label used in output headers.
    pub fn label(&self) -> String {
        match self {
            ModelConfig::Toric2dBoundary { l, .. } => format!("toric2d_boundary L={l}"),
            ModelConfig::Toric3dBoundary { l, .. } => format!("toric3d_boundary L={l}"),
            ModelConfig::Toric4dBoundary { l, fragment, .. } => match fragment {
                Some(d) => format!("toric4d_boundary fragment={}x{}x{}", d[0], d[1], d[2]),
                None => format!("toric4d_boundary L={}", l.unwrap_or(2)),
            },
            ModelConfig::Toric2dTorus { l, cut, .. } => {
                format!("toric2d_torus L={l} cut={}", cut.unwrap_or(*l))
            }
            ModelConfig::Custom { .. } => "custom".to_string(),
        }
    }

    pub fn is_builder(&self) -> bool {
        !matches!(self, ModelConfig::Custom { .. })
    }

    /// Build the model with the couplings named in the config itself.
    pub fn build(&self) -> Result<StabilizerModel, CliError> {
        match self {
            ModelConfig::Custom { doc } => {
                let text = doc.to_string();
                StabilizerModel::from_json(&text).map_err(CliError::Model)
            }
            _ => {
                let (a, b) = self.config_couplings()?;
                self.build_at(a, b)
            }
        }
    }

    fn config_couplings(&self) -> Result<(f64, f64), CliError> {
        match self {
            ModelConfig::Toric2dBoundary { beta_lambda_a, beta_lambda_b, .. }
            | ModelConfig::Toric3dBoundary { beta_lambda_a, beta_lambda_b, .. }
            | ModelConfig::Toric4dBoundary { beta_lambda_a, beta_lambda_b, .. }
            | ModelConfig::Toric2dTorus { beta_lambda_a, beta_lambda_b, .. } => {
                Ok((beta_lambda_a.beta_lambda()?, beta_lambda_b.beta_lambda()?))
            }
            ModelConfig::Custom { .. } => unreachable!("custom models carry t couplings directly"),
        }
    }

    /// Build the model at explicit couplings `βλ_A`, `βλ_B`; used by sweeps.
    /// `tanh` maps them onto the `t` parameters, sending `inf` to exactly 1.
    pub fn build_at(&self, beta_lambda_a: f64, beta_lambda_b: f64) -> Result<StabilizerModel, CliError> {
        let t_a = beta_lambda_a.tanh();
        let t_b = beta_lambda_b.tanh();
        let model = match self {
            ModelConfig::Toric2dBoundary { l, .. } => {
                build_boundary_2d(*l, t_a, t_b)?.into_model()
            }
            ModelConfig::Toric3dBoundary { l, .. } => {
                build_boundary_3d(*l, t_a, t_b)?.into_model()
            }
            ModelConfig::Toric4dBoundary { l, fragment, .. } => {
                let frag = fragment.map(|dims| Fragment { dims });
                if frag.is_none() && l.is_none() {
                    return Err(CliError::Config(
                        "toric4d_boundary needs \"L\" or \"fragment\"".into(),
                    ));
                }
                build_boundary_4d(l.unwrap_or(2), t_a, t_b, frag)?.into_model()
            }
            ModelConfig::Toric2dTorus { l, cut, .. } => {
                build_2d_torus(*l, t_a, t_b, cut.unwrap_or(*l))?
            }
            ModelConfig::Custom { .. } => {
                return Err(CliError::Config(
                    "coupling sweeps need a builder model, not \"custom\"".into(),
                ))
            }
        };
        Ok(model)
    }
}

/// One sweep axis: an explicit list or an inclusive linear range.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum GridAxis {
    List(Vec<Coupling>),
    Range { min: f64, max: f64, steps: usize },
}

impl GridAxis {
    /// Resolve to sorted coordinates (infinite couplings sort last).
    pub fn resolve(&self) -> Result<Vec<f64>, CliError> {
        let mut values = match self {
            GridAxis::List(list) => {
                let mut out = Vec::with_capacity(list.len());
                for c in list {
                    out.push(c.beta_lambda()?);
                }
                out
            }
            GridAxis::Range { min, max, steps } => {
                if !(min.is_finite() && max.is_finite() && min <= max) {
                    return Err(CliError::Config(format!(
                        "range must satisfy min <= max with finite bounds, got [{min}, {max}]"
                    )));
                }
                if *steps == 0 {
                    return Err(CliError::Config("range needs steps >= 1".into()));
                }
                if *steps == 1 {
                    vec![*min]
                } else {
                    let width = max - min;
                    (0..*steps)
                        .map(|i| min + width * i as f64 / (*steps - 1) as f64)
                        .collect()
                }
            }
        };
        if values.is_empty() {
            return Err(CliError::Config("grid axis must be non-empty".into()));
        }
        values.sort_by(f64::total_cmp);
        Ok(values)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub beta_lambda_a: GridAxis,
    pub beta_lambda_b: GridAxis,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    #[serde(default = "default_bench_k")]
    pub k: usize,
    #[serde(default = "default_bench_seed")]
    pub seed: u64,
}

fn default_bench_k() -> usize {
    12
}

fn default_bench_seed() -> u64 {
    20260823
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { k: default_bench_k(), seed: default_bench_seed() }
    }
}
