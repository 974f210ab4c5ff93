use nalgebra::DMatrix;

use crate::error::Result;
use crate::fock::{joint_position_density, FockConfig, FockVector, HermiteTable, QuadratureGrid};
use crate::model::{potential_on_grid, ModelParams};
use crate::C64;

fn photon_energy(p: &ModelParams, config: FockConfig) -> Vec<f64> {
    let dim = config.dim_per_mode();
    (0..config.total_dim())
        .map(|i| p.omega1 * ((i / dim) as f64 + 0.5) + p.omega2 * ((i % dim) as f64 + 0.5))
        .collect()
}

/// `Σᵢ ωᵢ(⟨nᵢ⟩ + ½) + Σ_grid ρ V Δx²` in the normalized state, with the
/// grid density renormalized to unit mass.
pub fn energy_expectation(
    state: &FockVector,
    p: &ModelParams,
    grid: &QuadratureGrid,
) -> Result<f64> {
    let norm_sqr = state.ensure_nondegenerate()?.powi(2);
    let h0 = photon_energy(p, state.config());
    let free: f64 = state
        .amplitudes()
        .iter()
        .zip(&h0)
        .map(|(a, e)| a.norm_sqr() * e)
        .sum::<f64>()
        / norm_sqr;
    if p.q1 * p.q2 == 0.0 {
        return Ok(free);
    }
    let field = potential_on_grid(p, grid)?;
    let rho = joint_position_density(state, grid)?;
    Ok(free + rho.expectation_of_field(&field.values))
}

/// The grid energy of [`energy_expectation`] folded into two quadratic forms.
///
/// With amplitudes `c`, `Σ ρV Δx² = c†V̄c / c†N̄c`, where `V̄` and `N̄` are the
/// grid sums of `ψₙψₘ V` and `ψₙψₘ`. Both are assembled once, so each
/// evaluation costs two small matrix-vector products.
#[derive(Debug, Clone)]
pub struct GridEnergy {
    config: FockConfig,
    photon: Vec<f64>,
    potential: Option<DMatrix<f64>>,
    gram: DMatrix<f64>,
}

impl GridEnergy {
    pub fn new(p: &ModelParams, config: FockConfig, grid: &QuadratureGrid) -> Result<Self> {
        p.validate()?;
        let dim = config.dim_per_mode();
        let n = grid.len();
        let table = HermiteTable::new(dim, grid);
        let dx = grid.spacing();
        let pairs = dim * dim;
        let mut prod = DMatrix::<f64>::zeros(n, pairs);
        for i in 0..n {
            for a in 0..dim {
                for b in 0..dim {
                    prod[(i, a * dim + b)] = table.row(a)[i] * table.row(b)[i];
                }
            }
        }
        let ones = DMatrix::<f64>::from_element(1, n, dx);
        let single = &ones * &prod;
        let total = config.total_dim();
        let gram = DMatrix::from_fn(total, total, |r, c| {
            let (n1, n2, m1, m2) = (r / dim, r % dim, c / dim, c % dim);
            single[(0, n1 * dim + m1)] * single[(0, n2 * dim + m2)]
        });

        let potential = if p.q1 * p.q2 == 0.0 {
            None
        } else {
            let field = potential_on_grid(p, grid)?;
            let v = DMatrix::from_row_slice(n, n, &field.values);
            let block = prod.transpose() * v * &prod * (dx * dx);
            Some(DMatrix::from_fn(total, total, |r, c| {
                let (n1, n2, m1, m2) = (r / dim, r % dim, c / dim, c % dim);
                block[(n1 * dim + m1, n2 * dim + m2)]
            }))
        };
        Ok(GridEnergy {
            config,
            photon: photon_energy(p, config),
            potential,
            gram,
        })
    }

    pub fn config(&self) -> FockConfig {
        self.config
    }

    fn quadratic(m: &DMatrix<f64>, c: &[C64]) -> f64 {
        let n = c.len();
        let mut acc = 0.0;
        for i in 0..n {
            let mut row = C64::new(0.0, 0.0);
            for j in 0..n {
                row += c[j] * m[(i, j)];
            }
            acc += (c[i].conj() * row).re;
        }
        acc
    }

    /// Energy of the normalized state from raw amplitudes.
    pub fn energy(&self, state: &FockVector) -> Result<f64> {
        let norm_sqr = state.ensure_nondegenerate()?.powi(2);
        Ok(self.energy_unchecked(state.amplitudes(), norm_sqr))
    }

    pub(crate) fn energy_unchecked(&self, c: &[C64], norm_sqr: f64) -> f64 {
        let free: f64 = c
            .iter()
            .zip(&self.photon)
            .map(|(a, e)| a.norm_sqr() * e)
            .sum::<f64>()
            / norm_sqr;
        match &self.potential {
            None => free,
            Some(v) => free + Self::quadratic(v, c) / Self::quadratic(&self.gram, c),
        }
    }
}
