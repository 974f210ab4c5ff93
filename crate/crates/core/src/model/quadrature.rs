use nalgebra::DMatrix;

use crate::fock::hermite_functions;
use crate::linalg::symmetric_eigen;

/// Gauss–Hermite rule for `∫ e^{-x²} f(x) dx`, stored in the form used with
/// Hermite functions.
///
/// `scaled_weights[i] = wᵢ e^{xᵢ²}`, so that `∫ ψₙψₘ g ≈ Σ scaled_weights[i] ψₙ(xᵢ)ψₘ(xᵢ) g(xᵢ)`
/// without ever forming `e^{±xᵢ²}` for large nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub scaled_weights: Vec<f64>,
}

impl GaussHermite {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Ordinary weights `wᵢ`.
    pub fn weights(&self) -> Vec<f64> {
        self.nodes
            .iter()
            .zip(&self.scaled_weights)
            .map(|(x, w)| w * (-x * x).exp())
            .collect()
    }
}

/// Nodes from the Golub–Welsch eigenproblem, refined by Newton steps on `ψ_N`.
pub fn gauss_hermite(order: usize) -> GaussHermite {
    assert!(order >= 1, "quadrature order must be positive");
    let mut jacobi = DMatrix::<f64>::zeros(order, order);
    for k in 1..order {
        let b = (k as f64 / 2.0).sqrt();
        jacobi[(k, k - 1)] = b;
        jacobi[(k - 1, k)] = b;
    }
    let (mut nodes, _) = symmetric_eigen(&jacobi);

    let nf = order as f64;
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let psi = hermite_functions(order + 1, *x);
            let deriv = (2.0 * nf).sqrt() * psi[order - 1] - *x * psi[order];
            if deriv == 0.0 {
                break;
            }
            *x -= psi[order] / deriv;
        }
    }
    // Exact symmetry of the rule.
    for i in 0..order / 2 {
        let m = 0.5 * (nodes[order - 1 - i] - nodes[i]);
        nodes[i] = -m;
        nodes[order - 1 - i] = m;
    }
    if order % 2 == 1 {
        nodes[order / 2] = 0.0;
    }

    let scaled_weights = nodes
        .iter()
        .map(|&x| {
            1.0 / hermite_functions(order, x)
                .iter()
                .map(|v| v * v)
                .sum::<f64>()
        })
        .collect();
    GaussHermite {
        nodes,
        scaled_weights,
    }
}
