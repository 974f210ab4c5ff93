use serde::{Deserialize, Serialize};

use crate::error::{QdoError, Result};

/// Uniform grid on one position quadrature.
///
/// Nodes include both endpoints; integrals are Riemann sums `Σ f(xᵢ)·Δx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureGrid {
    min: f64,
    max: f64,
    n_points: usize,
}

impl QuadratureGrid {
    pub fn new(min: f64, max: f64, n_points: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || min >= max {
            return Err(QdoError::Config(format!(
                "grid bounds must satisfy min < max, got [{min}, {max}]"
            )));
        }
        if n_points < 2 {
            return Err(QdoError::ParameterOutOfRange {
                name: "n_points",
                value: n_points as f64,
                allowed: ">= 2",
            });
        }
        Ok(QuadratureGrid { min, max, n_points })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.n_points - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.max
        } else {
            self.min + i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.node(i)).collect()
    }
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        QuadratureGrid {
            min: -6.0,
            max: 6.0,
            n_points: 500,
        }
    }
}
