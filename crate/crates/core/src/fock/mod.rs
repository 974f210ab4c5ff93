//! Truncated two-mode Fock space.

mod config;
mod density;
mod grid;
mod hermite;
mod quadrature;
mod state;
mod wigner;

pub use config::{FockConfig, Mode};
pub use density::{mutual_information, partial_trace, von_neumann_entropy, DensityMatrix};
pub use grid::QuadratureGrid;
pub use hermite::{hermite_function, hermite_functions, HermiteTable};
pub use quadrature::{
    joint_position_density, quadrature_amplitude, quadrature_amplitude_field, quadrature_moments,
    JointDensity, QuadratureMoments,
};
pub use state::{fidelity, number_expectation, FockVector};
pub use wigner::{wigner_antisymmetric_slice, wigner_kernel, wigner_single_mode, WignerField};
