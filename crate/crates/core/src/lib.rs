//! Continuous-variable circuit simulation and variational ground states for a
//! pair of Coulomb-coupled quantum Drude oscillators in one dimension.
//!
//! The crate is organised bottom-up:
//!
//! - [`fock`]: truncated two-mode Fock states, Hermite-function quadrature
//!   amplitudes, reduced density matrices, entropies and Wigner functions.
//! - [`gates`]: the photonic gate set (beamsplitter, rotation, squeezing,
//!   displacement, Kerr) and the layered variational circuit.
//! - [`model`]: the θ-family Coulomb potential and dense Hamiltonian assembly.
//! - [`vqe`]: grid-based energy estimation, finite-difference gradients, the
//!   training loop and the shot-based quadrature sampler.
//! - [`oracle`]: exact ground states by dense diagonalization.
//! - [`analysis`]: binding curves, Morse fits, entropy/correlation profiles
//!   and displaced-cat fits.
//! - [`io`]: run configuration, manifests, CSV/JSON persistence, SVG output
//!   and the `qdo` command-line driver.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

// NaN-rejecting range checks are written as `!(x > 0.0)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod fock;
pub mod gates;
pub mod io;
pub mod linalg;
pub mod model;
pub mod oracle;
pub mod vqe;

pub use error::{QdoError, Result};
pub use num_complex::Complex64 as C64;
