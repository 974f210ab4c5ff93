use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{d_grid, CatSearch, Engine, DEFAULT_BANDWIDTH};
use crate::error::{QdoError, Result};
use crate::fock::{FockConfig, QuadratureGrid};
use crate::model::{ModelParams, DEFAULT_QUAD_ORDER};
use crate::vqe::{Optimizer, VqeConfig};

/// Built-in configurations addressable by name in place of a file path.
pub const PRESETS: [(&str, &str); 2] = [
    (
        "preset-paper-theta058",
        include_str!("../../presets/preset-paper-theta058.toml"),
    ),
    (
        "preset-full",
        include_str!("../../presets/preset-full.toml"),
    ),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(f64),
    Many(Vec<f64>),
}

impl OneOrMany {
    pub fn values(&self) -> Vec<f64> {
        match self {
            OneOrMany::One(v) => vec![*v],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

/// `count` distances evenly spaced on `(min, max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DGridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Default for DGridSpec {
    fn default() -> Self {
        DGridSpec {
            min: 0.3,
            max: 3.5,
            count: 40,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    pub theta: OneOrMany,
    pub d_grid: DGridSpec,
    pub omega1: f64,
    pub omega2: f64,
    pub m1: f64,
    pub m2: f64,
    pub q1: f64,
    pub q2: f64,
    pub softening: f64,
    pub quad_order: usize,
}

impl Default for ModelSection {
    fn default() -> Self {
        let p = ModelParams::default();
        ModelSection {
            theta: OneOrMany::One(0.58),
            d_grid: DGridSpec::default(),
            omega1: p.omega1,
            omega2: p.omega2,
            m1: p.m1,
            m2: p.m2,
            q1: p.q1,
            q2: p.q2,
            softening: p.softening,
            quad_order: DEFAULT_QUAD_ORDER,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        let g = QuadratureGrid::default();
        GridSpec {
            min: g.min(),
            max: g.max(),
            points: g.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VqeSection {
    pub n_layers: usize,
    pub max_steps: usize,
    pub learning_rate: f64,
    pub optimizer: Optimizer,
    pub fd_step: f64,
    pub norm_penalty: f64,
    pub tolerance: f64,
    pub patience: usize,
    pub init_spread: f64,
    pub gate_padding: usize,
    pub grid: GridSpec,
}

impl Default for VqeSection {
    fn default() -> Self {
        let c = VqeConfig::default();
        VqeSection {
            n_layers: c.n_layers,
            max_steps: c.max_steps,
            learning_rate: c.learning_rate,
            optimizer: c.optimizer,
            fd_step: c.fd_step,
            norm_penalty: c.norm_penalty,
            tolerance: c.tolerance,
            patience: c.patience,
            init_spread: c.init_spread,
            gate_padding: c.gate_padding,
            grid: GridSpec::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FockSection {
    pub dim_per_mode: usize,
}

impl Default for FockSection {
    fn default() -> Self {
        FockSection {
            dim_per_mode: FockConfig::default().dim_per_mode(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisSection {
    pub bandwidth: f64,
    pub morse: bool,
    pub cat_fit: bool,
    pub cat_search: CatSearch,
}

impl Default for AnalysisSection {
    fn default() -> Self {
        AnalysisSection {
            bandwidth: DEFAULT_BANDWIDTH,
            morse: true,
            cat_fit: true,
            cat_search: CatSearch::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub directory: String,
    /// Any of `csv`, `json`, `svg`.
    pub formats: Vec<String>,
    /// Also store ground-state amplitudes.
    pub states: bool,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            directory: "qdo-out".into(),
            formats: vec!["csv".into(), "json".into()],
            states: false,
        }
    }
}

impl OutputSection {
    pub fn wants(&self, format: &str) -> bool {
        self.formats.iter().any(|f| f == format)
    }
}

/// Complete description of a run; every field has a default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub engines: Vec<Engine>,
    pub model: ModelSection,
    pub vqe: VqeSection,
    pub fock: FockSection,
    pub analysis: AnalysisSection,
    pub output: OutputSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            engines: vec![Engine::Oracle],
            model: ModelSection::default(),
            vqe: VqeSection::default(),
            fock: FockSection::default(),
            analysis: AnalysisSection::default(),
            output: OutputSection::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| QdoError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a TOML file, or a built-in preset when `source` names one.
    pub fn load(source: &str) -> Result<Self> {
        if let Some((_, text)) = PRESETS.iter().find(|(name, _)| *name == source) {
            return Self::from_toml_str(text);
        }
        let text = std::fs::read_to_string(Path::new(source))
            .map_err(|e| QdoError::Config(format!("cannot read {source}: {e}")))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.engines.is_empty() {
            return Err(QdoError::Config("at least one engine is required".into()));
        }
        for theta in self.thetas() {
            self.model_params(theta, 1.0)?;
        }
        let g = self.model.d_grid;
        if !(g.min >= 0.0 && g.max > g.min && g.count >= 1) {
            return Err(QdoError::Config(format!("invalid d_grid {g:?}")));
        }
        if self.model.quad_order < 2 * self.fock.dim_per_mode {
            return Err(QdoError::Config(
                "quad_order must be at least 2 * dim_per_mode".into(),
            ));
        }
        if !(self.analysis.bandwidth > 0.0) {
            return Err(QdoError::Config(
                "analysis.bandwidth must be positive".into(),
            ));
        }
        for f in &self.output.formats {
            if !matches!(f.as_str(), "csv" | "json" | "svg") {
                return Err(QdoError::Config(format!("unknown output format {f:?}")));
            }
        }
        self.vqe_config()?;
        Ok(())
    }

    pub fn thetas(&self) -> Vec<f64> {
        self.model.theta.values()
    }

    pub fn distances(&self) -> Vec<f64> {
        let g = self.model.d_grid;
        d_grid(g.min, g.max, g.count)
    }

    pub fn base_params(&self) -> ModelParams {
        let m = &self.model;
        ModelParams {
            omega1: m.omega1,
            omega2: m.omega2,
            m1: m.m1,
            m2: m.m2,
            q1: m.q1,
            q2: m.q2,
            softening: m.softening,
            ..ModelParams::default()
        }
    }

    pub fn model_params(&self, theta: f64, d: f64) -> Result<ModelParams> {
        self.base_params().with_geometry(theta, d)
    }

    pub fn vqe_config(&self) -> Result<VqeConfig> {
        let v = &self.vqe;
        let cfg = VqeConfig {
            n_layers: v.n_layers,
            max_steps: v.max_steps,
            learning_rate: v.learning_rate,
            optimizer: v.optimizer,
            fd_step: v.fd_step,
            norm_penalty: v.norm_penalty,
            tolerance: v.tolerance,
            patience: v.patience,
            seed: self.seed,
            init_spread: v.init_spread,
            gate_padding: v.gate_padding,
            grid: QuadratureGrid::new(v.grid.min, v.grid.max, v.grid.points)?,
            fock: FockConfig::new(self.fock.dim_per_mode)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}
