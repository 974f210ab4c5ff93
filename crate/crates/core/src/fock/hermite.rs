use super::QuadratureGrid;

const PI_QUARTER_INV: f64 = 0.751_125_544_464_942_5; // π^{-1/4}

/// Normalized oscillator eigenfunction `ψₙ(x) = e^{-x²/2} Hₙ(x) / √(√π 2ⁿ n!)`.
///
/// Evaluated with the three-term recurrence on the normalized functions,
/// which stays finite where raw `Hₙ(x)` would overflow.
pub fn hermite_function(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = PI_QUARTER_INV * (-0.5 * x * x).exp();
    for k in 1..=n {
        let next = (2.0 / k as f64).sqrt() * x * cur - ((k - 1) as f64 / k as f64).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `ψ₀(x) … ψ_{count-1}(x)` in one pass.
pub fn hermite_functions(count: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(PI_QUARTER_INV * (-0.5 * x * x).exp());
    for k in 1..count {
        let prev = if k >= 2 { out[k - 2] } else { 0.0 };
        let next =
            (2.0 / k as f64).sqrt() * x * out[k - 1] - ((k - 1) as f64 / k as f64).sqrt() * prev;
        out.push(next);
    }
    out
}

/// Oscillator eigenfunctions tabulated on a quadrature grid, `values[n][i] = ψₙ(xᵢ)`.
#[derive(Debug, Clone)]
pub struct HermiteTable {
    pub(crate) values: Vec<Vec<f64>>,
    pub(crate) grid: QuadratureGrid,
}

impl HermiteTable {
    pub fn new(levels: usize, grid: &QuadratureGrid) -> Self {
        let mut values = vec![Vec::with_capacity(grid.len()); levels];
        for x in grid.nodes() {
            for (n, v) in hermite_functions(levels, x).into_iter().enumerate() {
                values[n].push(v);
            }
        }
        HermiteTable {
            values,
            grid: *grid,
        }
    }

    pub fn levels(&self) -> usize {
        self.values.len()
    }

    pub fn grid(&self) -> &QuadratureGrid {
        &self.grid
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.values[n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_at_origin() {
        assert!((hermite_function(0, 0.0) - 0.751_125_544_464_942_5).abs() < 1e-15);
    }

    #[test]
    fn odd_levels_vanish_at_origin() {
        for n in [1, 3, 7, 21] {
            assert_eq!(hermite_function(n, 0.0), 0.0);
        }
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn matches_arbitrary_precision_values() {
        // 40-digit evaluations of the closed form.
        let cases = [
            (3, 1.2, -0.030_396_415_302_535_779),
            (10, 2.5, 0.050_963_812_362_210_440),
            (30, -4.1, -0.185_219_686_429_706_96),
        ];
        for (n, x, want) in cases {
            let got = hermite_function(n, x);
            assert!((got - want).abs() < 1e-13, "n={n} x={x}: {got} vs {want}");
        }
    }

    #[test]
    fn batch_agrees_with_single() {
        let xs = [-3.3, -0.2, 0.0, 1.7];
        for &x in &xs {
            let batch = hermite_functions(12, x);
            for (n, v) in batch.iter().enumerate() {
                assert_eq!(*v, hermite_function(n, x));
            }
        }
    }

    #[test]
    fn orthonormal_on_fine_grid() {
        let grid = QuadratureGrid::new(-12.0, 12.0, 4001).unwrap();
        let table = HermiteTable::new(8, &grid);
        let dx = grid.spacing();
        for n in 0..8 {
            for m in 0..8 {
                let s: f64 = table
                    .row(n)
                    .iter()
                    .zip(table.row(m))
                    .map(|(a, b)| a * b)
                    .sum::<f64>()
                    * dx;
                let want = if n == m { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-10, "<{n}|{m}> = {s}");
            }
        }
    }
}
