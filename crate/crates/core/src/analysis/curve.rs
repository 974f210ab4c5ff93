use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{QdoError, Result};
use crate::fock::{mutual_information, quadrature_moments, FockVector, QuadratureGrid};
use crate::gates::CircuitParams;
use crate::model::{uncoupled_ground_energy, ModelParams, DEFAULT_QUAD_ORDER};
use crate::oracle::ground_state_exact;
use crate::vqe::{point_seed, train, Init, VqeConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Vqe,
    Oracle,
}

impl std::str::FromStr for Engine {
    type Err = QdoError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vqe" => Ok(Engine::Vqe),
            "oracle" => Ok(Engine::Oracle),
            other => Err(QdoError::Config(format!(
                "unknown engine {other:?} (expected vqe or oracle)"
            ))),
        }
    }
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Engine::Vqe => "vqe",
            Engine::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointStatus {
    Ok,
    Failed(String),
}

impl PointStatus {
    pub fn is_ok(&self) -> bool {
        matches!(self, PointStatus::Ok)
    }
}

impl std::fmt::Display for PointStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PointStatus::Ok => f.write_str("ok"),
            PointStatus::Failed(msg) => write!(f, "failed: {msg}"),
        }
    }
}

impl std::str::FromStr for PointStatus {
    type Err = QdoError;
    fn from_str(s: &str) -> Result<Self> {
        if s == "ok" {
            Ok(PointStatus::Ok)
        } else if let Some(msg) = s.strip_prefix("failed: ") {
            Ok(PointStatus::Failed(msg.to_string()))
        } else {
            Err(QdoError::Config(format!("unrecognized point status {s:?}")))
        }
    }
}

/// One sweep point. Failed points carry NaN metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub d: f64,
    pub e_b: f64,
    pub energy: f64,
    pub norm: f64,
    /// Entanglement entropy `S(ρ₁)` in nats.
    pub entropy: f64,
    pub correlation: f64,
    pub status: PointStatus,
    pub source: Engine,
    #[serde(skip)]
    pub state: Option<FockVector>,
    #[serde(skip)]
    pub params: Option<CircuitParams>,
}

impl CurvePoint {
    fn failed(d: f64, source: Engine, err: &QdoError) -> Self {
        CurvePoint {
            d,
            e_b: f64::NAN,
            energy: f64::NAN,
            norm: f64::NAN,
            entropy: f64::NAN,
            correlation: f64::NAN,
            status: PointStatus::Failed(err.to_string()),
            source,
            state: None,
            params: None,
        }
    }
}

/// Binding energies along `d` at fixed θ, in increasing `d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BindingCurve {
    pub theta: f64,
    pub points: Vec<CurvePoint>,
}

impl BindingCurve {
    pub fn ok_points(&self) -> impl Iterator<Item = &CurvePoint> {
        self.points.iter().filter(|p| p.status.is_ok())
    }

    /// Point with the lowest binding energy.
    pub fn minimum(&self) -> Option<&CurvePoint> {
        self.ok_points().min_by(|a, b| a.e_b.total_cmp(&b.e_b))
    }

    pub fn ok_fraction(&self) -> f64 {
        if self.points.is_empty() {
            return 1.0;
        }
        self.ok_points().count() as f64 / self.points.len() as f64
    }
}

/// `count` equally spaced distances on `(min, max]`.
pub fn d_grid(min: f64, max: f64, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|i| min + (max - min) * i as f64 / count as f64)
        .collect()
}

/// Pearson coefficient of the two position quadratures on the grid.
pub fn correlation_coefficient(state: &FockVector, grid: &QuadratureGrid) -> Result<f64> {
    let m = quadrature_moments(state, grid)?;
    let (v1, v2) = (m.var_x1(), m.var_x2());
    if v1 < 1e-12 || v2 < 1e-12 {
        return Err(QdoError::DegenerateState { norm: v1.min(v2) });
    }
    Ok((m.covariance() / (v1 * v2).sqrt()).clamp(-1.0, 1.0))
}

#[allow(clippy::too_many_arguments)]
fn metrics(
    d: f64,
    p: &ModelParams,
    energy: f64,
    norm: f64,
    state: FockVector,
    grid: &QuadratureGrid,
    source: Engine,
    params: Option<CircuitParams>,
) -> Result<CurvePoint> {
    Ok(CurvePoint {
        d,
        e_b: energy - uncoupled_ground_energy(p),
        energy,
        norm,
        entropy: mutual_information(&state)? / 2.0,
        correlation: correlation_coefficient(&state, grid)?,
        status: PointStatus::Ok,
        source,
        state: Some(state),
        params,
    })
}

/// Ground solves along `d_grid` at fixed θ with the default quadrature order.
pub fn sweep(
    theta: f64,
    d_grid: &[f64],
    base: &ModelParams,
    cfg: &VqeConfig,
    engine: Engine,
) -> Result<BindingCurve> {
    sweep_with_order(theta, d_grid, base, cfg, engine, DEFAULT_QUAD_ORDER)
}

/// Per-point failures are recorded in the point status and never abort the
/// sweep. Oracle points run in parallel; variational points run from the
/// largest `d` down, each warm-started from the last successful one.
pub fn sweep_with_order(
    theta: f64,
    d_grid: &[f64],
    base: &ModelParams,
    cfg: &VqeConfig,
    engine: Engine,
    quad_order: usize,
) -> Result<BindingCurve> {
    cfg.validate()?;
    let mut ds = d_grid.to_vec();
    ds.sort_by(f64::total_cmp);
    ds.dedup();
    if ds.iter().any(|d| !(*d > 0.0)) {
        return Err(QdoError::Config("sweep distances must be positive".into()));
    }
    let grid = cfg.grid;

    let points: Vec<CurvePoint> = match engine {
        Engine::Oracle => ds
            .par_iter()
            .map(|&d| {
                let solve = || -> Result<CurvePoint> {
                    let p = base.with_geometry(theta, d)?;
                    let (energy, state) = ground_state_exact(&p, cfg.fock, quad_order)?;
                    metrics(d, &p, energy, 1.0, state, &grid, engine, None)
                };
                solve().unwrap_or_else(|e| CurvePoint::failed(d, engine, &e))
            })
            .collect(),
        Engine::Vqe => {
            let mut out = Vec::with_capacity(ds.len());
            let mut warm: Option<CircuitParams> = None;
            for &d in ds.iter().rev() {
                let solve = || -> Result<CurvePoint> {
                    let p = base.with_geometry(theta, d)?;
                    let point_cfg = VqeConfig {
                        seed: point_seed(cfg.seed, theta, d),
                        ..cfg.clone()
                    };
                    let init = warm.clone().map_or(Init::Random, Init::From);
                    let r = train(&p, &point_cfg, init)?;
                    metrics(
                        d,
                        &p,
                        r.energy,
                        r.final_norm,
                        r.state,
                        &grid,
                        engine,
                        Some(r.params),
                    )
                };
                let point = solve().unwrap_or_else(|e| CurvePoint::failed(d, engine, &e));
                if let Some(params) = &point.params {
                    warm = Some(params.clone());
                }
                out.push(point);
            }
            out.reverse();
            out
        }
    };
    Ok(BindingCurve { theta, points })
}

/// Whether the curve binds: its lowest `E_b` is below `−tolerance`.
pub fn bound_state_exists(curve: &BindingCurve, tolerance: f64) -> bool {
    curve.minimum().is_some_and(|p| p.e_b < -tolerance)
}

/// Adjacent angles `(θ_bound, θ_unbound)` between which binding disappears,
/// scanning curves in increasing θ.
pub fn critical_angle_bracket(curves: &[BindingCurve], tolerance: f64) -> Option<(f64, f64)> {
    let mut sorted: Vec<&BindingCurve> = curves.iter().collect();
    sorted.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    sorted
        .windows(2)
        .find(|w| bound_state_exists(w[0], tolerance) && !bound_state_exists(w[1], tolerance))
        .map(|w| (w[0].theta, w[1].theta))
}
