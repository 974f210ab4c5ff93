use serde::{Deserialize, Serialize};

use super::{DensityMatrix, FockVector, QuadratureGrid};
use crate::error::Result;
use crate::linalg::CMatrix;
use crate::C64;
use std::f64::consts::PI;

/// Phase-space field on `x_grid × p_grid`, row-major in `(ix, ip)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WignerField {
    pub x_grid: QuadratureGrid,
    pub p_grid: QuadratureGrid,
    pub values: Vec<f64>,
}

impl WignerField {
    pub fn get(&self, ix: usize, ip: usize) -> f64 {
        self.values[ix * self.p_grid.len() + ip]
    }

    /// Riemann sum `Σ W Δx Δp`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.x_grid.spacing() * self.p_grid.spacing()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Generalized Laguerre polynomial `L_n^{(k)}(z)` by upward recurrence.
fn laguerre(n: usize, k: f64, z: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + k - z;
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + k - z) * cur - (jf + k) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Wigner transform of the operator `|n⟩⟨m|` at `(x, p)`, with `a = (x + ip)/√2`
/// so the vacuum is `e^{-x²-p²}/π`.
pub fn wigner_kernel(n: usize, m: usize, x: f64, p: f64) -> C64 {
    if n < m {
        return wigner_kernel(m, n, x, p).conj();
    }
    let r2 = x * x + p * p;
    let k = n - m;
    // √(m!/n!)
    let ratio: f64 = ((m + 1)..=n)
        .map(|j| 1.0 / (j as f64))
        .product::<f64>()
        .sqrt();
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let base = C64::new(x, -p) * std::f64::consts::SQRT_2;
    sign / PI * ratio * base.powu(k as u32) * (-r2).exp() * laguerre(m, k as f64, 2.0 * r2)
}

fn kernel_matrix(dim: usize, x: f64, p: f64) -> CMatrix {
    let mut k = CMatrix::zeros(dim, dim);
    for n in 0..dim {
        for m in 0..=n {
            let w = wigner_kernel(n, m, x, p);
            k[(n, m)] = w;
            k[(m, n)] = w.conj();
        }
    }
    k
}

/// Single-mode Wigner function `W(x,p) = Σ ρ_{nm} W_{|n⟩⟨m|}(x,p)`.
pub fn wigner_single_mode(
    rho: &DensityMatrix,
    x_grid: &QuadratureGrid,
    p_grid: &QuadratureGrid,
) -> WignerField {
    let dim = rho.dim();
    let xs = x_grid.nodes();
    let ps = p_grid.nodes();
    let mut values = Vec::with_capacity(xs.len() * ps.len());
    for &x in &xs {
        for &p in &ps {
            let k = kernel_matrix(dim, x, p);
            let mut acc = 0.0;
            for n in 0..dim {
                for m in 0..dim {
                    acc += (rho.get(n, m) * k[(n, m)]).re;
                }
            }
            values.push(acc);
        }
    }
    WignerField {
        x_grid: *x_grid,
        p_grid: *p_grid,
        values,
    }
}

/// Two-mode Wigner function of a pure state restricted to the plane
/// `x1 = −x2 = x`, `p1 = −p2 = p`.
pub fn wigner_antisymmetric_slice(
    state: &FockVector,
    x_grid: &QuadratureGrid,
    p_grid: &QuadratureGrid,
) -> Result<WignerField> {
    let normalized = state.normalized()?;
    let dim = normalized.config().dim_per_mode();
    let a = normalized.as_matrix();
    let a_conj = a.conjugate();
    let xs = x_grid.nodes();
    let ps = p_grid.nodes();
    let mut values = Vec::with_capacity(xs.len() * ps.len());
    for &x in &xs {
        for &p in &ps {
            let k1 = kernel_matrix(dim, x, p);
            let k2 = kernel_matrix(dim, -x, -p);
            // Σ α_{n1n2} K1[n1,m1] K2[n2,m2] α*_{m1m2}
            let inner = &k1 * &a_conj * k2.transpose();
            let acc: C64 = a.iter().zip(inner.iter()).map(|(u, v)| u * v).sum();
            values.push(acc.re);
        }
    }
    Ok(WignerField {
        x_grid: *x_grid,
        p_grid: *p_grid,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{hermite_function, FockConfig};

    #[test]
    fn vacuum_and_single_photon_at_origin() {
        let g = QuadratureGrid::new(-1.0, 1.0, 3).unwrap();
        let vac = DensityMatrix::diagonal(&[1.0, 0.0, 0.0]).unwrap();
        let w = wigner_single_mode(&vac, &g, &g);
        assert!((w.get(1, 1) - 1.0 / PI).abs() < 1e-15);
        let one = DensityMatrix::diagonal(&[0.0, 1.0, 0.0]).unwrap();
        let w1 = wigner_single_mode(&one, &g, &g);
        assert!((w1.get(1, 1) + 1.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn laguerre_low_orders() {
        let z = 0.7;
        assert_eq!(laguerre(0, 2.0, z), 1.0);
        assert!((laguerre(1, 2.0, z) - (3.0 - z)).abs() < 1e-15);
        let l2 = (z * z - 2.0 * (2.0 + 2.0) * z + (2.0 + 1.0) * (2.0 + 2.0)) / 2.0;
        assert!((laguerre(2, 2.0, z) - l2).abs() < 1e-14);
    }

    /// W(x,p) = (1/π) ∫ ⟨x+y|ρ|x−y⟩ e^{−2ipy} dy, by direct quadrature.
    fn wigner_by_integration(rho: &DensityMatrix, x: f64, p: f64) -> f64 {
        let dim = rho.dim();
        let (lo, hi, n) = (-9.0, 9.0, 3601);
        let dy = (hi - lo) / (n - 1) as f64;
        let mut acc = C64::new(0.0, 0.0);
        for k in 0..n {
            let y = lo + k as f64 * dy;
            let mut elem = C64::new(0.0, 0.0);
            for a in 0..dim {
                for b in 0..dim {
                    elem += rho.get(a, b) * hermite_function(a, x + y) * hermite_function(b, x - y);
                }
            }
            acc += elem * C64::from_polar(1.0, -2.0 * p * y) * dy;
        }
        acc.re / PI
    }

    #[test]
    fn matches_integral_transform_for_mixture() {
        let rho = DensityMatrix::diagonal(&[0.8, 0.2]).unwrap();
        let g = QuadratureGrid::new(-2.0, 2.0, 5).unwrap();
        let w = wigner_single_mode(&rho, &g, &g);
        for (ix, &x) in g.nodes().iter().enumerate() {
            for (ip, &p) in g.nodes().iter().enumerate() {
                let want = wigner_by_integration(&rho, x, p);
                assert!((w.get(ix, ip) - want).abs() < 1e-10, "({x},{p})");
            }
        }
    }

    #[test]
    fn matches_integral_transform_with_coherences() {
        let phi: Vec<C64> = [
            C64::new(0.5, 0.0),
            C64::new(0.1, 0.6),
            C64::new(0.0, -0.3),
            C64::new(0.5, 0.2),
        ]
        .to_vec();
        let norm: f64 = phi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let phi: Vec<C64> = phi.iter().map(|z| z / norm).collect();
        let rho = DensityMatrix::pure(&phi).unwrap();
        let g = QuadratureGrid::new(-1.5, 1.5, 4).unwrap();
        let w = wigner_single_mode(&rho, &g, &g);
        for (ix, &x) in g.nodes().iter().enumerate() {
            for (ip, &p) in g.nodes().iter().enumerate() {
                let want = wigner_by_integration(&rho, x, p);
                assert!((w.get(ix, ip) - want).abs() < 1e-10, "({x},{p})");
            }
        }
    }

    #[test]
    fn normalization_on_wide_grid() {
        let g = QuadratureGrid::new(-6.0, 6.0, 241).unwrap();
        for probs in [
            vec![1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![0.3, 0.4, 0.3],
        ] {
            let rho = DensityMatrix::diagonal(&probs).unwrap();
            let w = wigner_single_mode(&rho, &g, &g);
            assert!((w.integral() - 1.0).abs() < 1e-3);
        }
    }

    #[test]
    fn vacuum_slice_is_product_gaussian() {
        let cfg = FockConfig::default();
        let g = QuadratureGrid::new(-2.0, 2.0, 9).unwrap();
        let w = wigner_antisymmetric_slice(&FockVector::vacuum(cfg), &g, &g).unwrap();
        for (ix, &x) in g.nodes().iter().enumerate() {
            for (ip, &p) in g.nodes().iter().enumerate() {
                let want = (-2.0 * x * x - 2.0 * p * p).exp() / (PI * PI);
                assert!((w.get(ix, ip) - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn product_slice_factorizes() {
        // For |φ⟩⊗|χ⟩ the slice is W_φ(x,p)·W_χ(−x,−p).
        let cfg = FockConfig::new(4).unwrap();
        let phi = vec![
            C64::new(0.6, 0.0),
            C64::new(0.0, 0.8),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ];
        let chi = vec![
            C64::new(0.0, 0.0),
            C64::new(0.6, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.8, 0.0),
        ];
        let s = FockVector::product(cfg, &phi, &chi).unwrap();
        let g = QuadratureGrid::new(-1.5, 1.5, 7).unwrap();
        let slice = wigner_antisymmetric_slice(&s, &g, &g).unwrap();
        let w1 = wigner_single_mode(&DensityMatrix::pure(&phi).unwrap(), &g, &g);
        let w2 = wigner_single_mode(&DensityMatrix::pure(&chi).unwrap(), &g, &g);
        let n = g.len();
        for ix in 0..n {
            for ip in 0..n {
                let want = w1.get(ix, ip) * w2.get(n - 1 - ix, n - 1 - ip);
                assert!((slice.get(ix, ip) - want).abs() < 1e-13);
            }
        }
    }
}
