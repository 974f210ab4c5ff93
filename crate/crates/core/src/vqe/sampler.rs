use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{QdoError, Result};
use crate::fock::{
    joint_position_density, number_expectation, FockVector, JointDensity, Mode, QuadratureGrid,
};
use crate::model::{potential_on_grid, ModelParams};

fn draw_cells(
    state: &FockVector,
    grid: &QuadratureGrid,
    shots: usize,
    seed: u64,
) -> Result<Vec<usize>> {
    if shots == 0 {
        return Err(QdoError::ParameterOutOfRange {
            name: "shots",
            value: 0.0,
            allowed: ">= 1",
        });
    }
    let masses = joint_position_density(state, grid)?.cell_masses();
    let mut cumulative = Vec::with_capacity(masses.len());
    let mut acc = 0.0;
    for m in &masses {
        acc += m;
        cumulative.push(acc);
    }
    let last = masses.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..shots)
        .map(|_| {
            let u = rng.gen::<f64>() * acc;
            cumulative.partition_point(|&c| c <= u).min(last)
        })
        .collect())
}

/// Empirical joint density from `shots` inverse-CDF draws over the flattened grid.
pub fn sample_quadratures(
    state: &FockVector,
    grid: &QuadratureGrid,
    shots: usize,
    seed: u64,
) -> Result<JointDensity> {
    let cells = draw_cells(state, grid, shots, seed)?;
    let mut counts = vec![0.0; grid.len() * grid.len()];
    for c in cells {
        counts[c] += 1.0;
    }
    JointDensity::from_weights(*grid, counts)
}

/// Shot-based energy and its standard error; only the potential is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampledEnergy {
    pub energy: f64,
    pub standard_error: f64,
    pub shots: usize,
}

pub fn estimate_energy_sampled(
    state: &FockVector,
    p: &ModelParams,
    grid: &QuadratureGrid,
    shots: usize,
    seed: u64,
) -> Result<SampledEnergy> {
    let n1 = number_expectation(state, Mode::One)?;
    let n2 = number_expectation(state, Mode::Two)?;
    let free = p.omega1 * (n1 + 0.5) + p.omega2 * (n2 + 0.5);
    let cells = draw_cells(state, grid, shots, seed)?;
    if p.q1 * p.q2 == 0.0 {
        return Ok(SampledEnergy {
            energy: free,
            standard_error: 0.0,
            shots,
        });
    }
    let field = potential_on_grid(p, grid)?;
    let m = shots as f64;
    let mean = cells.iter().map(|&c| field.values[c]).sum::<f64>() / m;
    let var = if shots > 1 {
        cells
            .iter()
            .map(|&c| (field.values[c] - mean).powi(2))
            .sum::<f64>()
            / (m - 1.0)
    } else {
        0.0
    };
    Ok(SampledEnergy {
        energy: free + mean,
        standard_error: (var / m).sqrt(),
        shots,
    })
}
