use serde::{Deserialize, Serialize};

use super::{hermite_functions, FockVector, HermiteTable, QuadratureGrid};
use crate::error::{QdoError, Result};
use crate::C64;

/// `⟨x1, x2|ψ⟩ = Σ α_{n1n2} ψ_{n1}(x1) ψ_{n2}(x2)` for the state as given.
pub fn quadrature_amplitude(state: &FockVector, x1: f64, x2: f64) -> C64 {
    let d = state.config().dim_per_mode();
    let h1 = hermite_functions(d, x1);
    let h2 = hermite_functions(d, x2);
    let mut acc = C64::new(0.0, 0.0);
    for (n1, &f1) in h1.iter().enumerate() {
        let row: C64 = h2
            .iter()
            .enumerate()
            .map(|(n2, &f2)| state.amplitude(n1, n2) * f2)
            .sum();
        acc += row * f1;
    }
    acc
}

/// Amplitude on every node pair, row-major in `(i1, i2)`.
pub fn quadrature_amplitude_field(state: &FockVector, table: &HermiteTable) -> Vec<C64> {
    let d = state.config().dim_per_mode();
    assert!(table.levels() >= d, "Hermite table has too few levels");
    let n = table.grid().len();
    // partial[n1][i2] = Σ_{n2} α_{n1 n2} ψ_{n2}(x_{i2})
    let mut partial = vec![vec![C64::new(0.0, 0.0); n]; d];
    for (n1, row) in partial.iter_mut().enumerate() {
        for n2 in 0..d {
            let a = state.amplitude(n1, n2);
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            for (slot, &h) in row.iter_mut().zip(table.row(n2)) {
                *slot += a * h;
            }
        }
    }
    let mut out = vec![C64::new(0.0, 0.0); n * n];
    for i1 in 0..n {
        let dst = &mut out[i1 * n..(i1 + 1) * n];
        for (n1, row) in partial.iter().enumerate() {
            let h = table.row(n1)[i1];
            if h == 0.0 {
                continue;
            }
            for (slot, v) in dst.iter_mut().zip(row) {
                *slot += v * h;
            }
        }
    }
    out
}

/// Discretized joint law of the position quadratures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointDensity {
    pub grid: QuadratureGrid,
    /// Density values, row-major in `(i1, i2)`, with `Σ values·Δx² = 1`.
    pub values: Vec<f64>,
}

impl JointDensity {
    /// Builds a density from raw nonnegative weights, rescaling them so that
    /// the Riemann sum is one.
    pub fn from_weights(grid: QuadratureGrid, mut values: Vec<f64>) -> Result<Self> {
        let n = grid.len();
        if values.len() != n * n {
            return Err(QdoError::Config(format!(
                "density needs {} values, got {}",
                n * n,
                values.len()
            )));
        }
        let cell = grid.spacing() * grid.spacing();
        let total: f64 = values.iter().sum::<f64>() * cell;
        if total <= 0.0 || !total.is_finite() {
            return Err(QdoError::DegenerateState { norm: total });
        }
        let scale = 1.0 / total;
        values.iter_mut().for_each(|v| *v *= scale);
        Ok(JointDensity { grid, values })
    }

    pub fn side(&self) -> usize {
        self.grid.len()
    }

    pub fn get(&self, i1: usize, i2: usize) -> f64 {
        self.values[i1 * self.side() + i2]
    }

    /// Probability mass of each cell, `ρ·Δx²`.
    pub fn cell_masses(&self) -> Vec<f64> {
        let cell = self.grid.spacing() * self.grid.spacing();
        self.values.iter().map(|v| v * cell).collect()
    }

    /// Grid expectation `Σ f(x1, x2) ρ Δx²` of a field laid out like `values`.
    pub fn expectation_of_field(&self, field: &[f64]) -> f64 {
        let cell = self.grid.spacing() * self.grid.spacing();
        self.values
            .iter()
            .zip(field)
            .map(|(r, f)| r * f)
            .sum::<f64>()
            * cell
    }

    pub fn moments(&self) -> QuadratureMoments {
        let n = self.side();
        let nodes = self.grid.nodes();
        let cell = self.grid.spacing() * self.grid.spacing();
        let mut m = QuadratureMoments::default();
        for i1 in 0..n {
            let x1 = nodes[i1];
            let row = &self.values[i1 * n..(i1 + 1) * n];
            let mut p = 0.0;
            let mut s2 = 0.0;
            let mut s22 = 0.0;
            for (&r, &x2) in row.iter().zip(&nodes) {
                p += r;
                s2 += r * x2;
                s22 += r * x2 * x2;
            }
            m.mean_x1 += p * x1;
            m.mean_x1_sq += p * x1 * x1;
            m.mean_x2 += s2;
            m.mean_x2_sq += s22;
            m.mean_x1x2 += s2 * x1;
        }
        m.mean_x1 *= cell;
        m.mean_x2 *= cell;
        m.mean_x1_sq *= cell;
        m.mean_x2_sq *= cell;
        m.mean_x1x2 *= cell;
        m
    }
}

/// `ρ(x1, x2) = |⟨x1, x2|ψ⟩|²` on the grid, renormalized to unit mass.
pub fn joint_position_density(state: &FockVector, grid: &QuadratureGrid) -> Result<JointDensity> {
    state.ensure_nondegenerate()?;
    let table = HermiteTable::new(state.config().dim_per_mode(), grid);
    joint_density_with_table(state, &table)
}

pub(crate) fn joint_density_with_table(
    state: &FockVector,
    table: &HermiteTable,
) -> Result<JointDensity> {
    state.ensure_nondegenerate()?;
    let amps = quadrature_amplitude_field(state, table);
    JointDensity::from_weights(
        *table.grid(),
        amps.into_iter().map(|a| a.norm_sqr()).collect(),
    )
}

/// First and second moments of the position quadratures.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct QuadratureMoments {
    pub mean_x1: f64,
    pub mean_x2: f64,
    pub mean_x1_sq: f64,
    pub mean_x2_sq: f64,
    pub mean_x1x2: f64,
}

impl QuadratureMoments {
    pub fn var_x1(&self) -> f64 {
        self.mean_x1_sq - self.mean_x1 * self.mean_x1
    }

    pub fn var_x2(&self) -> f64 {
        self.mean_x2_sq - self.mean_x2 * self.mean_x2
    }

    pub fn covariance(&self) -> f64 {
        self.mean_x1x2 - self.mean_x1 * self.mean_x2
    }
}

pub fn quadrature_moments(state: &FockVector, grid: &QuadratureGrid) -> Result<QuadratureMoments> {
    Ok(joint_position_density(state, grid)?.moments())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockConfig;
    use std::f64::consts::PI;

    fn cfg() -> FockConfig {
        FockConfig::default()
    }

    #[test]
    fn vacuum_amplitude_at_origin() {
        let v = FockVector::vacuum(cfg());
        let a = quadrature_amplitude(&v, 0.0, 0.0);
        assert!((a.re - PI.powf(-0.5)).abs() < 1e-15);
        assert_eq!(a.im, 0.0);
    }

    #[test]
    fn first_excited_vanishes_on_axis() {
        let v = FockVector::basis(cfg(), 1, 0);
        for x2 in [-2.0, -0.3, 0.0, 1.4, 5.0] {
            assert_eq!(quadrature_amplitude(&v, 0.0, x2).norm(), 0.0);
        }
    }

    fn pseudo_random_state(seed: u64) -> FockVector {
        let mut x = seed;
        let mut next = || {
            x = x
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((x >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let amps = (0..25).map(|_| C64::new(next(), next())).collect();
        FockVector::from_amplitudes(cfg(), amps)
            .unwrap()
            .normalized()
            .unwrap()
    }

    #[test]
    fn amplitude_integrates_to_norm() {
        let s = pseudo_random_state(7).scaled(C64::new(0.8, 0.0));
        let grid = QuadratureGrid::new(-10.0, 10.0, 801).unwrap();
        let table = HermiteTable::new(5, &grid);
        let amps = quadrature_amplitude_field(&s, &table);
        let dx = grid.spacing();
        let integral: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>() * dx * dx;
        assert!(
            (integral - s.norm_sqr()).abs() < 1e-10,
            "{integral} vs {}",
            s.norm_sqr()
        );
    }

    #[test]
    fn field_matches_pointwise_formula() {
        let c = cfg();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut s = FockVector::zeros(c);
        s.amplitudes_mut()[c.index(0, 0)] = C64::new(h, 0.0);
        s.amplitudes_mut()[c.index(1, 1)] = C64::new(h, 0.0);
        let grid = QuadratureGrid::new(-4.0, 4.0, 41).unwrap();
        let rho = joint_position_density(&s, &grid).unwrap();
        let nodes = grid.nodes();
        let raw: Vec<f64> = nodes
            .iter()
            .flat_map(|&a| nodes.iter().map(move |&b| (a, b)))
            .map(|(a, b)| quadrature_amplitude(&s, a, b).norm_sqr())
            .collect();
        let total: f64 = raw.iter().sum::<f64>() * grid.spacing().powi(2);
        for (k, r) in raw.iter().enumerate() {
            assert!((rho.values[k] - r / total).abs() < 1e-12);
        }
    }

    #[test]
    fn vacuum_density_is_gaussian() {
        let grid = QuadratureGrid::default();
        let rho = joint_position_density(&FockVector::vacuum(cfg()), &grid).unwrap();
        let nodes = grid.nodes();
        let dx = grid.spacing();
        let raw_total: f64 = nodes
            .iter()
            .flat_map(|&a| nodes.iter().map(move |&b| (-a * a - b * b).exp() / PI))
            .sum::<f64>()
            * dx
            * dx;
        for &(i, j) in &[(0, 0), (249, 250), (100, 400), (250, 250)] {
            let want = (-nodes[i].powi(2) - nodes[j].powi(2)).exp() / PI / raw_total;
            assert!((rho.get(i, j) - want).abs() < 1e-12);
        }
        let m = rho.moments();
        assert!(m.mean_x1.abs() < 1e-12 && m.mean_x2.abs() < 1e-12);
        assert!((m.mean_x1_sq - 0.5).abs() < 1e-9);
        assert!((m.mean_x2_sq - 0.5).abs() < 1e-9);
        assert!(m.mean_x1x2.abs() < 1e-12);
    }

    #[test]
    fn density_is_normalized_and_nonnegative() {
        let grid = QuadratureGrid::new(-6.0, 6.0, 120).unwrap();
        for seed in 1..5 {
            let rho = joint_position_density(&pseudo_random_state(seed), &grid).unwrap();
            assert!(rho.values.iter().all(|&v| v >= 0.0));
            let total: f64 = rho.cell_masses().iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
            let m = rho.moments();
            assert!(m.covariance().powi(2) <= m.var_x1() * m.var_x2() + 1e-12);
        }
    }

    #[test]
    fn zero_state_is_degenerate() {
        let grid = QuadratureGrid::default();
        assert!(matches!(
            joint_position_density(&FockVector::zeros(cfg()), &grid),
            Err(QdoError::DegenerateState { .. })
        ));
    }
}
