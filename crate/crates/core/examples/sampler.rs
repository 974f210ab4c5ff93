//! Shot-based energy estimate against the grid expectation value.

use qdo::fock::QuadratureGrid;
use qdo::model::{ModelParams, DEFAULT_QUAD_ORDER};
use qdo::oracle::ground_state_exact;
use qdo::vqe::{estimate_energy_sampled, GridEnergy, VqeConfig};

fn main() -> qdo::Result<()> {
    let p = ModelParams::new(0.58, 1.36)?;
    let cfg = VqeConfig::default();
    let grid = QuadratureGrid::default();
    let (_, state) = ground_state_exact(&p, cfg.fock, DEFAULT_QUAD_ORDER)?;
    let exact = GridEnergy::new(&p, cfg.fock, &grid)?.energy(&state)?;
    println!("grid energy {exact:.6}");

    for shots in [1_000, 10_000, 100_000] {
        let s = estimate_energy_sampled(&state, &p, &grid, shots, 7)?;
        let z = (s.energy - exact) / s.standard_error;
        println!(
            "M = {shots:>6}: {:.6} ± {:.6}  ({z:+.2} σ)",
            s.energy, s.standard_error
        );
    }
    Ok(())
}
