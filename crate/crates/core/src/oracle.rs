//! Exact ground truth by dense diagonalization of the truncated Hamiltonian.

use crate::error::Result;
use crate::fock::{FockConfig, FockVector};
use crate::linalg::symmetric_eigen;
use crate::model::{hamiltonian_dense, ModelParams};
use crate::C64;

/// Lowest eigenpair, with the eigenvector phase fixed so that its
/// largest-magnitude amplitude is real and positive.
pub fn ground_state_exact(
    p: &ModelParams,
    config: FockConfig,
    quad_order: usize,
) -> Result<(f64, FockVector)> {
    let h = hamiltonian_dense(p, config, quad_order)?;
    let (values, vectors) = symmetric_eigen(&h);
    let col = vectors.column(0);
    // Ties resolved toward the lowest index.
    let mut pivot = 0;
    for (i, v) in col.iter().enumerate() {
        if v.abs() > col[pivot].abs() + 1e-12 {
            pivot = i;
        }
    }
    let sign = col[pivot].signum();
    let amps = col.iter().map(|&v| C64::new(sign * v, 0.0)).collect();
    Ok((values[0], FockVector::from_amplitudes(config, amps)?))
}

/// The `k` lowest eigenvalues, ascending.
pub fn spectrum_exact(
    p: &ModelParams,
    config: FockConfig,
    quad_order: usize,
    k: usize,
) -> Result<Vec<f64>> {
    if k > config.total_dim() {
        return Err(crate::QdoError::ParameterOutOfRange {
            name: "k",
            value: k as f64,
            allowed: "<= dim_per_mode^2",
        });
    }
    let h = hamiltonian_dense(p, config, quad_order)?;
    let (mut values, _) = symmetric_eigen(&h);
    values.truncate(k);
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CVector;
    use crate::model::{swap_parity_matrix, DEFAULT_QUAD_ORDER};

    fn cfg(dim: usize) -> FockConfig {
        FockConfig::new(dim).unwrap()
    }

    #[test]
    fn uncharged_ground_is_vacuum() {
        let p = ModelParams::default().uncharged();
        let (e, s) = ground_state_exact(&p, cfg(5), DEFAULT_QUAD_ORDER).unwrap();
        assert_eq!(e, 1.0);
        assert_eq!(s, FockVector::vacuum(cfg(5)));
    }

    #[test]
    fn uncharged_ladder() {
        let p = ModelParams::default().uncharged();
        let s = spectrum_exact(&p, cfg(5), 10, 6).unwrap();
        let want = [1.0, 2.0, 2.0, 3.0, 3.0, 3.0];
        for (a, b) in s.iter().zip(want) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(spectrum_exact(&p, cfg(5), 10, 26).is_err());
    }

    #[test]
    fn large_distance_binding_vanishes() {
        let p = ModelParams::new(0.58, 3.16).unwrap();
        let (e, s) = ground_state_exact(&p, cfg(5), DEFAULT_QUAD_ORDER).unwrap();
        assert!((-0.02..=0.005).contains(&(e - 1.0)), "{e}");
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ground_state_is_swap_parity_even() {
        let c = cfg(5);
        for d in [0.54, 1.3] {
            let (_, s) =
                ground_state_exact(&ModelParams::new(0.58, d).unwrap(), c, DEFAULT_QUAD_ORDER)
                    .unwrap();
            let v = CVector::from_column_slice(s.amplitudes());
            let overlap = (v.adjoint() * swap_parity_matrix(c) * &v)[(0, 0)];
            assert!((overlap.re - 1.0).abs() < 1e-6 && overlap.im.abs() < 1e-12);
        }
    }

    #[test]
    fn basis_size_is_variational() {
        let p = ModelParams::new(0.58, 0.8).unwrap();
        let e: Vec<f64> = [5, 10, 12]
            .iter()
            .map(|&d| spectrum_exact(&p, cfg(d), DEFAULT_QUAD_ORDER, 3).unwrap()[0])
            .collect();
        assert!(e[0] >= e[1] - 1e-12 && e[1] >= e[2] - 1e-12);
        assert!(e[1] - e[2] <= e[0] - e[1]);
    }

    #[test]
    fn phase_convention() {
        let (_, s) =
            ground_state_exact(&ModelParams::new(0.58, 0.54).unwrap(), cfg(5), 80).unwrap();
        let big = s.amplitudes().iter().map(|a| a.norm()).fold(0.0, f64::max);
        let pivot = s
            .amplitudes()
            .iter()
            .find(|a| (a.norm() - big).abs() < 1e-12)
            .unwrap();
        assert!(pivot.re > 0.0 && pivot.im == 0.0);
    }
}
