//! Truncated-Fock matrices of the photonic gate set.
//!
//! Every gate is `exp(G)` of its generator written with the truncated ladder
//! matrices. Two-mode operators act on the flat `(n1, n2)` basis with mode 1
//! as the slow index.

use crate::error::{QdoError, Result};
use crate::linalg::{annihilation, creation, expm, kron, CMatrix};
use crate::C64;

pub const MAX_SQUEEZE: f64 = 5.0;
pub const MAX_DISPLACEMENT: f64 = 4.0;

fn check_dim(dim: usize) {
    assert!(dim >= 2, "gate dimension must be at least 2, got {dim}");
}

/// `R(φ) = exp(iφ n)`.
pub fn build_rotation(phi: f64, dim: usize) -> CMatrix {
    check_dim(dim);
    CMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            C64::from_polar(1.0, phi * i as f64)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// `K(κ) = exp(iκ n²)`.
pub fn build_kerr(kappa: f64, dim: usize) -> CMatrix {
    check_dim(dim);
    CMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            C64::from_polar(1.0, kappa * (i * i) as f64)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Generator `(a² − a†²)/2` of the real squeezer.
pub fn squeeze_generator(dim: usize) -> CMatrix {
    let a = annihilation(dim);
    let ad = creation(dim);
    (&a * &a - &ad * &ad).scale(0.5)
}

/// Generator `a† − a` of a real displacement.
pub fn displacement_generator(dim: usize) -> CMatrix {
    creation(dim) - annihilation(dim)
}

/// Generator `a₁a₂† − a₁†a₂` of the beamsplitter at zero phase, on `dim²` states.
pub fn beamsplitter_generator(dim: usize) -> CMatrix {
    let a = annihilation(dim);
    let ad = creation(dim);
    kron(&a, &ad) - kron(&ad, &a)
}

pub(crate) fn check_squeeze(r: f64) -> Result<()> {
    if !r.is_finite() || r.abs() > MAX_SQUEEZE {
        return Err(QdoError::ParameterOutOfRange {
            name: "squeeze r",
            value: r,
            allowed: "|r| <= 5",
        });
    }
    Ok(())
}

pub(crate) fn check_displacement(alpha: C64) -> Result<()> {
    if !alpha.norm().is_finite() || alpha.norm() > MAX_DISPLACEMENT {
        return Err(QdoError::ParameterOutOfRange {
            name: "displacement |alpha|",
            value: alpha.norm(),
            allowed: "|alpha| <= 4",
        });
    }
    Ok(())
}

/// `S(r) = exp(r/2 (a² − a†²))` truncated to `dim` levels.
pub fn build_squeeze(r: f64, dim: usize) -> Result<CMatrix> {
    check_dim(dim);
    check_squeeze(r)?;
    Ok(expm(&squeeze_generator(dim).scale(r)))
}

/// `D(α) = exp(α a† − α* a)` truncated to `dim` levels.
pub fn build_displacement(alpha: C64, dim: usize) -> Result<CMatrix> {
    check_dim(dim);
    check_displacement(alpha)?;
    let a = annihilation(dim);
    let ad = creation(dim);
    Ok(expm(&(ad * alpha - a * alpha.conj())))
}

/// `BS(θ, φ) = exp(θ(e^{iφ} a₁a₂† − e^{−iφ} a₁†a₂))` on the `dim²` two-mode space.
pub fn build_beamsplitter(theta: f64, phi: f64, dim: usize) -> CMatrix {
    check_dim(dim);
    let a = annihilation(dim);
    let ad = creation(dim);
    let g =
        kron(&a, &ad) * C64::from_polar(theta, phi) - kron(&ad, &a) * C64::from_polar(theta, -phi);
    expm(&g)
}

/// Builds a single-mode gate on `dim + pad` levels and keeps the leading `dim` block.
pub fn build_padded<F>(dim: usize, pad: usize, build: F) -> Result<CMatrix>
where
    F: FnOnce(usize) -> Result<CMatrix>,
{
    let big = build(dim + pad)?;
    Ok(big.view((0, 0), (dim, dim)).into_owned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{is_unitary, max_abs_diff};
    use std::f64::consts::PI;

    #[test]
    fn rotation_identities() {
        assert!(max_abs_diff(&build_rotation(0.0, 6), &CMatrix::identity(6, 6)) < 1e-15);
        let r = build_rotation(PI, 4);
        assert!((r[(1, 1)] + C64::new(1.0, 0.0)).norm() < 1e-15);
        let a = build_rotation(0.4, 5) * build_rotation(1.3, 5);
        assert!(max_abs_diff(&a, &build_rotation(1.7, 5)) < 1e-12);
    }

    #[test]
    fn kerr_phases() {
        assert!(max_abs_diff(&build_kerr(0.0, 5), &CMatrix::identity(5, 5)) < 1e-15);
        let k = build_kerr(0.3, 5);
        assert!((k[(2, 2)] - C64::from_polar(1.0, 1.2)).norm() < 1e-15);
        let r = build_rotation(0.8, 5);
        assert!(max_abs_diff(&(&k * &r), &(&r * &k)) < 1e-14);
    }

    #[test]
    fn zero_parameter_gates_are_identity() {
        assert!(max_abs_diff(&build_squeeze(0.0, 5).unwrap(), &CMatrix::identity(5, 5)) < 1e-15);
        assert!(
            max_abs_diff(
                &build_displacement(C64::new(0.0, 0.0), 5).unwrap(),
                &CMatrix::identity(5, 5)
            ) < 1e-15
        );
        assert!(max_abs_diff(&build_beamsplitter(0.0, 1.1, 4), &CMatrix::identity(16, 16)) < 1e-15);
    }

    #[test]
    fn out_of_range_parameters() {
        assert!(matches!(
            build_squeeze(5.5, 5),
            Err(QdoError::ParameterOutOfRange { .. })
        ));
        assert!(matches!(
            build_displacement(C64::new(3.0, 3.0), 5),
            Err(QdoError::ParameterOutOfRange { .. })
        ));
        assert!(build_squeeze(f64::NAN, 5).is_err());
    }

    #[test]
    fn squeezed_vacuum_even_levels() {
        // High-dimensional exponential as the reference.
        let r = 0.4;
        let s = build_squeeze(r, 40).unwrap();
        for n in (1..40).step_by(2) {
            assert!(s[(n, 0)].norm() < 1e-15);
        }
        assert!((s[(0, 0)].re - r.cosh().powf(-0.5)).abs() < 1e-12);
        let small = build_squeeze(r, 12).unwrap();
        assert!((small[(0, 0)].re - r.cosh().powf(-0.5)).abs() < 1e-4);
    }

    #[test]
    fn coherent_column_matches_closed_form() {
        let alpha = C64::new(0.9, -0.4);
        let dim = 30;
        let d = build_displacement(alpha, dim).unwrap();
        let mut fact = 1.0;
        for n in 0..10 {
            if n > 0 {
                fact *= n as f64;
            }
            let want = (-alpha.norm_sqr() / 2.0).exp() * alpha.powu(n as u32) / fact.sqrt();
            assert!((d[(n, 0)] - want).norm() < 1e-6);
        }
    }

    #[test]
    fn beamsplitter_one_photon_block() {
        // Direct 2×2 exponential on span{|1,0⟩, |0,1⟩}: G = [[0, −e^{−iφ}], [e^{iφ}, 0]].
        let (theta, phi) = (0.7, 0.3);
        let dim = 3;
        let bs = build_beamsplitter(theta, phi, dim);
        let i10 = dim; // (1,0)
        let i01 = 1; // (0,1)
        assert!((bs[(i10, i10)] - C64::new(theta.cos(), 0.0)).norm() < 1e-13);
        assert!((bs[(i01, i10)] - C64::from_polar(theta.sin(), phi)).norm() < 1e-13);
        assert!((bs[(i10, i01)] + C64::from_polar(theta.sin(), -phi)).norm() < 1e-13);
    }

    #[test]
    fn exact_unitaries() {
        for dim in [2, 5, 7] {
            assert!(is_unitary(&build_rotation(0.77, dim), 1e-12));
            assert!(is_unitary(&build_kerr(-1.9, dim), 1e-12));
            assert!(is_unitary(&build_beamsplitter(1.2, -0.4, dim), 1e-12));
        }
    }

    #[test]
    fn padded_build_projects_leading_block() {
        let padded = build_padded(5, 4, |d| build_squeeze(0.3, d)).unwrap();
        let big = build_squeeze(0.3, 9).unwrap();
        assert_eq!(padded.shape(), (5, 5));
        assert_eq!(padded[(2, 0)], big[(2, 0)]);
    }
}
