//! The θ-family one-dimensional Coulomb coupling between two Drude
//! oscillators and the dense Hamiltonian built from it.

mod hamiltonian;
mod params;
mod potential;
mod quadrature;

pub use hamiltonian::{hamiltonian_dense, swap_parity_matrix, DEFAULT_QUAD_ORDER};
pub use params::ModelParams;
pub use potential::{coulomb_potential, potential_on_grid, PotentialField};
pub use quadrature::{gauss_hermite, GaussHermite};

/// Ground energy `ħ(ω₁ + ω₂)/2` of the two oscillators with the charges switched off.
pub fn uncoupled_ground_energy(p: &ModelParams) -> f64 {
    0.5 * (p.omega1 + p.omega2)
}

/// Position scales `λᵢ = √(ħ/(mᵢωᵢ))` mapping dimensionless quadratures to
/// physical coordinates.
pub fn scale_factors(p: &ModelParams) -> (f64, f64) {
    (
        (p.m1 * p.omega1).recip().sqrt(),
        (p.m2 * p.omega2).recip().sqrt(),
    )
}
