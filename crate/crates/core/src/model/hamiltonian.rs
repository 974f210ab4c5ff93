use nalgebra::DMatrix;

use super::{gauss_hermite, scale_factors, ModelParams};
use crate::error::{QdoError, Result};
use crate::fock::{hermite_functions, FockConfig};
use crate::linalg::CMatrix;
use crate::C64;

pub const DEFAULT_QUAD_ORDER: usize = 80;

/// Dense `H = Σᵢ ωᵢ(nᵢ + ½) + V̂` on the truncated two-mode space.
///
/// Potential matrix elements are Gauss–Hermite tensor sums of the physical
/// potential at `(λ₁x₁, λ₂x₂)`. The result is real and symmetrized.
pub fn hamiltonian_dense(
    p: &ModelParams,
    config: FockConfig,
    quad_order: usize,
) -> Result<DMatrix<f64>> {
    p.validate()?;
    let dim = config.dim_per_mode();
    if quad_order < 2 * dim {
        return Err(QdoError::ParameterOutOfRange {
            name: "quad_order",
            value: quad_order as f64,
            allowed: ">= 2 * dim_per_mode",
        });
    }
    let total = config.total_dim();
    let mut h = DMatrix::<f64>::zeros(total, total);
    for n1 in 0..dim {
        for n2 in 0..dim {
            let i = config.index(n1, n2);
            h[(i, i)] = p.omega1 * (n1 as f64 + 0.5) + p.omega2 * (n2 as f64 + 0.5);
        }
    }
    if p.q1 * p.q2 == 0.0 {
        return Ok(h);
    }

    let rule = gauss_hermite(quad_order);
    let (l1, l2) = scale_factors(p);
    let q = quad_order;
    let psi: Vec<Vec<f64>> = rule
        .nodes
        .iter()
        .map(|&x| hermite_functions(dim, x))
        .collect();

    let mut vq = DMatrix::<f64>::zeros(q, q);
    let mut singular = 0;
    let mut first = None;
    for i in 0..q {
        for j in 0..q {
            match super::coulomb_potential(p, l1 * rule.nodes[i], l2 * rule.nodes[j]) {
                Ok(v) => vq[(i, j)] = v,
                Err(QdoError::SingularConfiguration { .. }) => {
                    singular += 1;
                    first.get_or_insert((i, j));
                }
                Err(e) => return Err(e),
            }
        }
    }
    if singular > 0 {
        return Err(QdoError::SingularConfiguration {
            count: singular,
            first,
        });
    }

    // Weighted products ψₙψₘ·W at each node, one column per (n, m) pair.
    let pairs = dim * dim;
    let mut prod = DMatrix::<f64>::zeros(q, pairs);
    for i in 0..q {
        for n in 0..dim {
            for m in 0..dim {
                prod[(i, n * dim + m)] = rule.scaled_weights[i] * psi[i][n] * psi[i][m];
            }
        }
    }
    // block[(n1 m1), (n2 m2)] = Σᵢⱼ prod[i, n1m1] V[i, j] prod[j, n2m2]
    let block = prod.transpose() * &vq * &prod;
    for n1 in 0..dim {
        for n2 in 0..dim {
            let row = config.index(n1, n2);
            for m1 in 0..dim {
                for m2 in 0..dim {
                    h[(row, config.index(m1, m2))] += block[(n1 * dim + m1, n2 * dim + m2)];
                }
            }
        }
    }
    Ok((&h + h.transpose()) * 0.5)
}

/// The operator implementing `(x₁, x₂) → (−x₂, −x₁)`: `|n₁,n₂⟩ ↦ (−1)^{n₁+n₂}|n₂,n₁⟩`.
pub fn swap_parity_matrix(config: FockConfig) -> CMatrix {
    let dim = config.dim_per_mode();
    let mut s = CMatrix::zeros(config.total_dim(), config.total_dim());
    for n1 in 0..dim {
        for n2 in 0..dim {
            let sign = if (n1 + n2) % 2 == 0 { 1.0 } else { -1.0 };
            s[(config.index(n2, n1), config.index(n1, n2))] = C64::new(sign, 0.0);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::symmetric_eigen;

    fn cfg(dim: usize) -> FockConfig {
        FockConfig::new(dim).unwrap()
    }

    fn ground(p: &ModelParams, dim: usize, order: usize) -> f64 {
        symmetric_eigen(&hamiltonian_dense(p, cfg(dim), order).unwrap()).0[0]
    }

    #[test]
    fn uncharged_is_diagonal_ladder() {
        let p = ModelParams {
            omega1: 1.5,
            ..ModelParams::new(0.58, 1.0).unwrap().uncharged()
        };
        let c = cfg(4);
        let h = hamiltonian_dense(&p, c, 8).unwrap();
        for n1 in 0..4 {
            for n2 in 0..4 {
                let i = c.index(n1, n2);
                assert_eq!(h[(i, i)], 1.5 * (n1 as f64 + 0.5) + (n2 as f64 + 0.5));
            }
        }
        assert_eq!(h.iter().filter(|v| **v != 0.0).count(), 16);
    }

    #[test]
    fn rejects_low_order() {
        let p = ModelParams::default();
        assert!(hamiltonian_dense(&p, cfg(5), 9).is_err());
    }

    #[test]
    fn commutes_with_swap_parity() {
        let p = ModelParams::new(0.58, 0.9).unwrap();
        let c = cfg(5);
        let h = hamiltonian_dense(&p, c, 80)
            .unwrap()
            .map(|v| C64::new(v, 0.0));
        let s = swap_parity_matrix(c);
        let comm = &h * &s - &s * &h;
        assert!(comm.iter().all(|z| z.norm() < 1e-8));
    }

    #[test]
    fn matrix_element_against_direct_quadrature() {
        // ⟨1,0|V|0,1⟩ by a brute-force tensor Riemann sum.
        let p = ModelParams::new(1.0, 1.5).unwrap();
        let c = cfg(3);
        let h = hamiltonian_dense(&p, c, 80).unwrap();
        let (lo, hi, n) = (-8.0, 8.0, 801);
        let dx = (hi - lo) / (n - 1) as f64;
        let mut acc = 0.0;
        for i in 0..n {
            let x1 = lo + i as f64 * dx;
            let h1 = hermite_functions(2, x1);
            for j in 0..n {
                let x2 = lo + j as f64 * dx;
                let h2 = hermite_functions(2, x2);
                acc += h1[1]
                    * h1[0]
                    * h2[0]
                    * h2[1]
                    * super::super::coulomb_potential(&p, x1, x2).unwrap();
            }
        }
        acc *= dx * dx;
        assert!((h[(c.index(1, 0), c.index(0, 1))] - acc).abs() < 1e-8);
    }

    #[test]
    fn converges_in_quadrature_order() {
        for (theta, d) in [(0.58, 1.0), (0.58, 2.0), (1.5, 1.0), (1.5, 2.0)] {
            let p = ModelParams::new(theta, d).unwrap();
            assert!(
                (ground(&p, 5, 80) - ground(&p, 5, 320)).abs() < 2e-6,
                "({theta}, {d})"
            );
        }
        // Near the bound-state minimum the integrand is sharply peaked and
        // order 80 is only good to about 1e-3.
        let p = ModelParams::new(0.58, 0.54).unwrap();
        assert!((ground(&p, 5, 80) - ground(&p, 5, 320)).abs() < 2e-3);
    }

    #[test]
    fn binding_near_reported_minimum() {
        let e = ground(&ModelParams::new(0.58, 0.54).unwrap(), 5, 80) - 1.0;
        assert!((e + 0.46).abs() < 0.05, "{e}");
        let far = ground(&ModelParams::new(0.58, 3.16).unwrap(), 5, 80);
        assert!((far - 1.0).abs() < 1e-2);
    }
}
