use serde::{Deserialize, Serialize};

use super::{FockConfig, Mode};
use crate::error::{QdoError, Result};
use crate::linalg::CMatrix;
use crate::C64;

const DEGENERATE_NORM: f64 = 1e-12;

/// Amplitudes `α_{n1 n2}` of a two-mode state, stored row-major in `(n1, n2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockVector {
    config: FockConfig,
    amplitudes: Vec<C64>,
}

impl FockVector {
    pub fn from_amplitudes(config: FockConfig, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != config.total_dim() {
            return Err(QdoError::Config(format!(
                "expected {} amplitudes, got {}",
                config.total_dim(),
                amplitudes.len()
            )));
        }
        Ok(FockVector { config, amplitudes })
    }

    pub fn zeros(config: FockConfig) -> Self {
        FockVector {
            config,
            amplitudes: vec![C64::new(0.0, 0.0); config.total_dim()],
        }
    }

    pub fn vacuum(config: FockConfig) -> Self {
        Self::basis(config, 0, 0)
    }

    /// `|n1, n2⟩`; panics if either level is outside the cutoff.
    pub fn basis(config: FockConfig, n1: usize, n2: usize) -> Self {
        let d = config.dim_per_mode();
        assert!(n1 < d && n2 < d, "level ({n1}, {n2}) beyond cutoff {d}");
        let mut v = Self::zeros(config);
        v.amplitudes[config.index(n1, n2)] = C64::new(1.0, 0.0);
        v
    }

    /// Product state `|φ⟩ ⊗ |χ⟩` from single-mode amplitude lists.
    pub fn product(config: FockConfig, phi: &[C64], chi: &[C64]) -> Result<Self> {
        let d = config.dim_per_mode();
        if phi.len() != d || chi.len() != d {
            return Err(QdoError::Config(format!(
                "single-mode factors must have {d} amplitudes"
            )));
        }
        let amplitudes = phi
            .iter()
            .flat_map(|a| chi.iter().map(move |b| a * b))
            .collect();
        Ok(FockVector { config, amplitudes })
    }

    pub fn config(&self) -> FockConfig {
        self.config
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amplitudes
    }

    pub fn amplitude(&self, n1: usize, n2: usize) -> C64 {
        self.amplitudes[self.config.index(n1, n2)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm < DEGENERATE_NORM {
            return Err(QdoError::DegenerateState { norm });
        }
        Ok(self.scaled(C64::new(1.0 / norm, 0.0)))
    }

    pub fn scaled(&self, factor: C64) -> Self {
        FockVector {
            config: self.config,
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &FockVector) -> C64 {
        debug_assert_eq!(self.config, other.config);
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Amplitudes as a `dim × dim` matrix with rows indexed by `n1`.
    pub fn as_matrix(&self) -> CMatrix {
        let d = self.config.dim_per_mode();
        CMatrix::from_row_slice(d, d, &self.amplitudes)
    }

    pub fn from_matrix(config: FockConfig, m: &CMatrix) -> Result<Self> {
        let d = config.dim_per_mode();
        if m.shape() != (d, d) {
            return Err(QdoError::Config(format!(
                "expected a {d}×{d} amplitude matrix, got {:?}",
                m.shape()
            )));
        }
        let amplitudes = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)])
            .collect();
        Ok(FockVector { config, amplitudes })
    }

    pub(crate) fn ensure_nondegenerate(&self) -> Result<f64> {
        let norm = self.norm();
        if norm < DEGENERATE_NORM {
            Err(QdoError::DegenerateState { norm })
        } else {
            Ok(norm)
        }
    }
}

/// `|⟨a|b⟩|²` between the normalized versions of `a` and `b`.
pub fn fidelity(a: &FockVector, b: &FockVector) -> Result<f64> {
    let na = a.ensure_nondegenerate()?;
    let nb = b.ensure_nondegenerate()?;
    let f = a.inner(b).norm_sqr() / (na * na * nb * nb);
    Ok(f.min(1.0))
}

/// Mean photon number `⟨a†a⟩` of one mode in the normalized state.
pub fn number_expectation(state: &FockVector, mode: Mode) -> Result<f64> {
    let norm = state.ensure_nondegenerate()?;
    let d = state.config.dim_per_mode();
    let mut acc = 0.0;
    for n1 in 0..d {
        for n2 in 0..d {
            let n = match mode {
                Mode::One => n1,
                Mode::Two => n2,
            };
            acc += n as f64 * state.amplitude(n1, n2).norm_sqr();
        }
    }
    Ok(acc / (norm * norm))
}
