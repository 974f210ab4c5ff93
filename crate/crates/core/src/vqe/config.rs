use serde::{Deserialize, Serialize};

use crate::error::{QdoError, Result};
use crate::fock::{FockConfig, QuadratureGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Optimizer {
    /// `ω ← ω − η∇C`.
    GradientDescent,
    /// Adaptive moments with β₁ = 0.9, β₂ = 0.999.
    Adam,
}

/// Settings of one variational run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VqeConfig {
    pub n_layers: usize,
    pub max_steps: usize,
    pub learning_rate: f64,
    pub optimizer: Optimizer,
    /// Central-difference step.
    pub fd_step: f64,
    /// Weight γ of the `γ(1 − ‖ψ‖²)²` term.
    pub norm_penalty: f64,
    /// Stop once `|ΔC|` stays below `tolerance` for `patience` consecutive steps.
    pub tolerance: f64,
    pub patience: usize,
    pub seed: u64,
    /// Half-width of the uniform initial parameter distribution.
    pub init_spread: f64,
    /// Extra levels used to build S and D before projecting (0 builds them directly).
    pub gate_padding: usize,
    pub grid: QuadratureGrid,
    pub fock: FockConfig,
}

impl Default for VqeConfig {
    fn default() -> Self {
        VqeConfig {
            n_layers: 8,
            max_steps: 5000,
            learning_rate: 0.01,
            optimizer: Optimizer::Adam,
            fd_step: 1e-3,
            norm_penalty: 10.0,
            tolerance: 1e-6,
            patience: 50,
            seed: 0,
            init_spread: 0.05,
            gate_padding: 0,
            grid: QuadratureGrid::default(),
            fock: FockConfig::default(),
        }
    }
}

impl VqeConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(QdoError::Config(msg));
        if self.n_layers == 0 {
            return bad("n_layers must be at least 1".into());
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad(format!(
                "learning_rate must be positive, got {}",
                self.learning_rate
            ));
        }
        if !(self.fd_step > 0.0 && self.fd_step.is_finite()) {
            return bad(format!("fd_step must be positive, got {}", self.fd_step));
        }
        if !(self.norm_penalty >= 0.0 && self.norm_penalty.is_finite()) {
            return bad(format!(
                "norm_penalty must be >= 0, got {}",
                self.norm_penalty
            ));
        }
        if !(self.tolerance > 0.0) || self.patience == 0 {
            return bad("tolerance and patience must be positive".into());
        }
        if !(self.init_spread >= 0.0 && self.init_spread.is_finite()) {
            return bad(format!(
                "init_spread must be >= 0, got {}",
                self.init_spread
            ));
        }
        // Deserialized values bypass the constructors.
        QuadratureGrid::new(self.grid.min(), self.grid.max(), self.grid.len())?;
        FockConfig::new(self.fock.dim_per_mode())?;
        Ok(())
    }
}

/// Per-point generator seed derived from the run seed and the geometry.
pub fn point_seed(seed: u64, theta: f64, d: f64) -> u64 {
    fn splitmix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    splitmix(seed ^ splitmix(theta.to_bits() ^ splitmix(d.to_bits())))
}
