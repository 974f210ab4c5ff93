use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{GridEnergy, Optimizer, VqeConfig};
use crate::error::{QdoError, Result};
use crate::fock::FockVector;
use crate::gates::{CircuitParams, GateSet, LayerParams};
use crate::model::ModelParams;

/// Starting point of a training run.
#[derive(Debug, Clone, PartialEq)]
pub enum Init {
    /// Uniform in `[−init_spread, init_spread]` from the config seed.
    Random,
    /// Continue from given parameters (warm start).
    From(CircuitParams),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeResult {
    pub params: CircuitParams,
    /// Energy of the normalized final state.
    pub energy: f64,
    /// Cost at every step, starting with the initial parameters.
    pub energy_trace: Vec<f64>,
    pub state: FockVector,
    pub final_norm: f64,
    pub steps_taken: usize,
    pub converged: bool,
}

/// The training cost for a fixed model and configuration.
#[derive(Debug, Clone)]
pub struct Objective {
    gates: Arc<GateSet>,
    energy: GridEnergy,
    penalty: f64,
    fd_step: f64,
    n_layers: usize,
    vacuum: FockVector,
}

impl Objective {
    pub fn new(p: &ModelParams, cfg: &VqeConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Objective {
            gates: GateSet::shared_padded(cfg.fock.dim_per_mode(), cfg.gate_padding),
            energy: GridEnergy::new(p, cfg.fock, &cfg.grid)?,
            penalty: cfg.norm_penalty,
            fd_step: cfg.fd_step,
            n_layers: cfg.n_layers,
            vacuum: FockVector::vacuum(cfg.fock),
        })
    }

    fn check_shape(&self, params: &CircuitParams) -> Result<()> {
        if params.n_layers() != self.n_layers {
            return Err(QdoError::Config(format!(
                "expected {} layers, got {}",
                self.n_layers,
                params.n_layers()
            )));
        }
        Ok(())
    }

    fn run_from(&self, mut state: FockVector, layers: &[LayerParams]) -> Result<FockVector> {
        for layer in layers {
            state = self.gates.apply_layer(&state, layer)?;
        }
        Ok(state)
    }

    fn cost_of_state(&self, state: &FockVector) -> f64 {
        let n2 = state.norm_sqr();
        let leak = 1.0 - n2;
        self.energy.energy_unchecked(state.amplitudes(), n2) + self.penalty * leak * leak
    }

    /// Circuit output for `params`.
    pub fn state(&self, params: &CircuitParams) -> Result<FockVector> {
        self.check_shape(params)?;
        self.run_from(self.vacuum.clone(), &params.layers)
    }

    pub fn cost(&self, params: &CircuitParams) -> Result<f64> {
        let s = self.state(params)?;
        s.ensure_nondegenerate()?;
        Ok(self.cost_of_state(&s))
    }

    /// Central differences `(C(ω + h eᵢ) − C(ω − h eᵢ)) / 2h`.
    ///
    /// States after each layer are computed once, so a shifted coordinate
    /// only re-runs the layers from its own onward.
    pub fn gradient(&self, params: &CircuitParams) -> Result<Vec<f64>> {
        self.gradient_with_step(params, self.fd_step)
    }

    pub fn gradient_with_step(&self, params: &CircuitParams, h: f64) -> Result<Vec<f64>> {
        self.check_shape(params)?;
        let mut prefix = Vec::with_capacity(params.n_layers() + 1);
        prefix.push(self.vacuum.clone());
        for layer in &params.layers {
            let next = self
                .gates
                .apply_layer(prefix.last().expect("nonempty"), layer)?;
            prefix.push(next);
        }
        let flat = params.to_flat();
        (0..flat.len())
            .into_par_iter()
            .map(|k| {
                let l = k / LayerParams::LEN;
                let j = k % LayerParams::LEN;
                let base = params.layers[l].to_array();
                let shifted = |sign: f64| -> Result<f64> {
                    let mut arr = base;
                    arr[j] += sign * h;
                    let s = self
                        .gates
                        .apply_layer(&prefix[l], &LayerParams::from_slice(&arr))?;
                    let s = self.run_from(s, &params.layers[l + 1..])?;
                    s.ensure_nondegenerate()?;
                    Ok(self.cost_of_state(&s))
                };
                Ok((shifted(1.0)? - shifted(-1.0)?) / (2.0 * h))
            })
            .collect()
    }
}

pub fn cost(params: &CircuitParams, p: &ModelParams, cfg: &VqeConfig) -> Result<f64> {
    Objective::new(p, cfg)?.cost(params)
}

pub fn gradient(params: &CircuitParams, p: &ModelParams, cfg: &VqeConfig) -> Result<Vec<f64>> {
    Objective::new(p, cfg)?.gradient(params)
}

/// Gradient-based minimization of the cost until `|ΔC|` stays below the
/// tolerance for `patience` steps or `max_steps` is reached.
pub fn train(p: &ModelParams, cfg: &VqeConfig, init: Init) -> Result<VqeResult> {
    let objective = Objective::new(p, cfg)?;
    let params = match init {
        Init::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            CircuitParams::random(cfg.n_layers, cfg.init_spread, &mut rng)
        }
        Init::From(params) => params,
    };
    let mut x = params.to_flat();
    let n = x.len();
    let (b1, b2, eps) = (0.9, 0.999, 1e-8);
    let mut m = vec![0.0; n];
    let mut v = vec![0.0; n];

    let non_finite = |step: usize, x: &[f64]| QdoError::NonFinite {
        step,
        params: x.to_vec(),
    };
    let mut current = CircuitParams::from_flat(&x)?;
    let mut c = objective.cost(&current)?;
    let mut trace = vec![c];
    let mut quiet = 0;
    let mut converged = false;
    let mut steps = 0;

    while steps < cfg.max_steps {
        if !c.is_finite() {
            return Err(non_finite(steps, &x));
        }
        let g = objective.gradient(&current)?;
        if g.iter().any(|v| !v.is_finite()) {
            return Err(non_finite(steps, &x));
        }
        let t = (steps + 1) as i32;
        for i in 0..n {
            match cfg.optimizer {
                Optimizer::GradientDescent => x[i] -= cfg.learning_rate * g[i],
                Optimizer::Adam => {
                    m[i] = b1 * m[i] + (1.0 - b1) * g[i];
                    v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
                    let mh = m[i] / (1.0 - b1.powi(t));
                    let vh = v[i] / (1.0 - b2.powi(t));
                    x[i] -= cfg.learning_rate * mh / (vh.sqrt() + eps);
                }
            }
        }
        steps += 1;
        current = CircuitParams::from_flat(&x)?;
        let next = objective.cost(&current)?;
        if !next.is_finite() {
            return Err(non_finite(steps, &x));
        }
        quiet = if (next - c).abs() < cfg.tolerance {
            quiet + 1
        } else {
            0
        };
        c = next;
        trace.push(c);
        if quiet >= cfg.patience {
            converged = true;
            break;
        }
    }

    let raw = objective.state(&current)?;
    let final_norm = raw.norm();
    let state = raw.normalized()?;
    let energy = objective.energy.energy(&state)?;
    Ok(VqeResult {
        params: current,
        energy,
        energy_trace: trace,
        state,
        final_norm,
        steps_taken: steps,
        converged,
    })
}
