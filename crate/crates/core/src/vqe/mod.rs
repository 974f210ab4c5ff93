//! Variational ground states: grid energy estimation, finite-difference
//! gradients, the training loop and the shot-based quadrature sampler.

mod config;
mod energy;
mod sampler;
mod train;

pub use config::{point_seed, Optimizer, VqeConfig};
pub use energy::{energy_expectation, GridEnergy};
pub use sampler::{estimate_energy_sampled, sample_quadratures, SampledEnergy};
pub use train::{cost, gradient, train, Init, Objective, VqeResult};
