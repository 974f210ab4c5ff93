use super::{FockVector, Mode};
use crate::error::{QdoError, Result};
use crate::linalg::{hermitian_eigen, CMatrix};
use crate::C64;

const EIGEN_FLOOR: f64 = 1e-14;

/// Single-mode density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    /// Wraps a square matrix, checking hermiticity to `1e-10`.
    pub fn new(entries: CMatrix) -> Result<Self> {
        let (r, c) = entries.shape();
        if r != c || r == 0 {
            return Err(QdoError::Config(format!(
                "density matrix must be square, got {r}×{c}"
            )));
        }
        let asym = (0..r)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .map(|(i, j)| (entries[(i, j)] - entries[(j, i)].conj()).norm())
            .fold(0.0, f64::max);
        if asym > 1e-10 {
            return Err(QdoError::Config(format!(
                "density matrix is not Hermitian (deviation {asym:e})"
            )));
        }
        Ok(DensityMatrix { entries })
    }

    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let n = probs.len();
        let mut m = CMatrix::zeros(n, n);
        for (i, &p) in probs.iter().enumerate() {
            m[(i, i)] = C64::new(p, 0.0);
        }
        Self::new(m)
    }

    /// `|φ⟩⟨φ|` for a single-mode amplitude list.
    pub fn pure(phi: &[C64]) -> Result<Self> {
        let n = phi.len();
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = phi[i] * phi[j].conj();
            }
        }
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn get(&self, n: usize, m: usize) -> C64 {
        self.entries[(n, m)]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.entries[(i, i)].re).sum()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigen(&self.entries).0
    }

    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Reduced density matrix of `keep`, tracing out the other mode of the
/// normalized state. For mode 1, `ρ₁[n][m] = Σₗ α_{nl} α*_{ml}`.
pub fn partial_trace(state: &FockVector, keep: Mode) -> Result<DensityMatrix> {
    let normalized = state.normalized()?;
    let a = normalized.as_matrix();
    let rho = match keep {
        Mode::One => &a * a.adjoint(),
        Mode::Two => a.transpose() * a.conjugate(),
    };
    // Exact hermiticity; the products above are Hermitian up to rounding.
    let sym = (&rho + rho.adjoint()).scale(0.5);
    DensityMatrix::new(sym)
}

/// `S(ρ) = −Tr ρ ln ρ`, with eigenvalues below `1e-14` contributing nothing.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let s: f64 = rho
        .eigenvalues()
        .into_iter()
        .filter(|&p| p > EIGEN_FLOOR)
        .map(|p| -p * p.ln())
        .sum();
    s.max(0.0)
}

/// Mutual information of a pure two-mode state, `I(1:2) = 2 S(ρ₁)`.
pub fn mutual_information(state: &FockVector) -> Result<f64> {
    Ok(2.0 * von_neumann_entropy(&partial_trace(state, Mode::One)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockConfig;
    use std::f64::consts::LN_2;

    fn bell() -> FockVector {
        let cfg = FockConfig::default();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = FockVector::zeros(cfg);
        v.amplitudes_mut()[cfg.index(0, 0)] = C64::new(h, 0.0);
        v.amplitudes_mut()[cfg.index(1, 1)] = C64::new(h, 0.0);
        v
    }

    #[test]
    fn product_state_traces_to_pure() {
        let cfg = FockConfig::default();
        let phi: Vec<C64> = [0.6, 0.0, 0.8, 0.0, 0.0]
            .iter()
            .map(|&x| C64::new(x, 0.0))
            .collect();
        let chi: Vec<C64> = [0.0, 0.0, 0.0, 1.0, 0.0]
            .iter()
            .map(|&x| C64::new(0.0, x))
            .collect();
        let s = FockVector::product(cfg, &phi, &chi).unwrap();
        let rho = partial_trace(&s, Mode::One).unwrap();
        let want = DensityMatrix::pure(&phi).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert!((rho.get(i, j) - want.get(i, j)).norm() < 1e-15);
            }
        }
        assert!(von_neumann_entropy(&rho) < 1e-12);
        assert!(mutual_information(&s).unwrap() < 1e-12);
    }

    #[test]
    fn bell_state_is_maximally_mixed_on_two_levels() {
        let rho = partial_trace(&bell(), Mode::One).unwrap();
        assert!((rho.get(0, 0).re - 0.5).abs() < 1e-15);
        assert!((rho.get(1, 1).re - 0.5).abs() < 1e-15);
        assert!(rho.get(2, 2).norm() < 1e-15);
        assert!((von_neumann_entropy(&rho) - LN_2).abs() < 1e-12);
        assert!((mutual_information(&bell()).unwrap() - 2.0 * LN_2).abs() < 1e-12);
    }

    #[test]
    fn unnormalized_input_is_normalized_first() {
        let rho = partial_trace(&bell().scaled(C64::new(3.0, 1.0)), Mode::Two).unwrap();
        assert!((rho.trace() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_state_errors() {
        let z = FockVector::zeros(FockConfig::default());
        assert!(matches!(
            partial_trace(&z, Mode::One),
            Err(QdoError::DegenerateState { .. })
        ));
    }

    #[test]
    fn entropy_of_diagonal_mixture() {
        let rho = DensityMatrix::diagonal(&[0.7, 0.2, 0.1]).unwrap();
        // −Σ p ln p evaluated at 40 digits.
        assert!((von_neumann_entropy(&rho) - 0.801_818_552_543_337_3).abs() < 1e-12);
        let half = DensityMatrix::diagonal(&[0.5, 0.5]).unwrap();
        assert!((von_neumann_entropy(&half) - LN_2).abs() < 1e-15);
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 1)] = C64::new(1.0, 0.0);
        assert!(DensityMatrix::new(m).is_err());
    }
}
