//! Trains the layered circuit at one geometry and compares it with the exact
//! ground state.
//!
//! ```text
//! cargo run --release --example vqe_point -- [theta] [d] [seed]
//! ```

use std::time::Instant;

use qdo::fock::{fidelity, mutual_information};
use qdo::model::{uncoupled_ground_energy, ModelParams, DEFAULT_QUAD_ORDER};
use qdo::oracle::ground_state_exact;
use qdo::vqe::{point_seed, train, Init, VqeConfig};

fn main() -> qdo::Result<()> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let theta = args.first().copied().unwrap_or(0.58);
    let d = args.get(1).copied().unwrap_or(0.54);
    let seed = args.get(2).copied().unwrap_or(0.0) as u64;

    let p = ModelParams::new(theta, d)?;
    let cfg = VqeConfig {
        seed: point_seed(seed, theta, d),
        ..Default::default()
    };

    let start = Instant::now();
    let result = train(&p, &cfg, Init::Random)?;
    let elapsed = start.elapsed();
    let (exact, exact_state) = ground_state_exact(&p, cfg.fock, DEFAULT_QUAD_ORDER)?;
    let e0 = uncoupled_ground_energy(&p);

    println!("theta = {theta}, d = {d}");
    println!(
        "steps         {} (converged: {})",
        result.steps_taken, result.converged
    );
    println!("time          {:.1} s", elapsed.as_secs_f64());
    println!(
        "E_vqe         {:.6}  (E_b = {:+.6})",
        result.energy,
        result.energy - e0
    );
    println!("E_exact       {:.6}  (E_b = {:+.6})", exact, exact - e0);
    println!("final norm    {:.12}", result.final_norm);
    println!(
        "fidelity      {:.6}",
        fidelity(&result.state, &exact_state)?
    );
    println!(
        "entropy       {:.6}",
        mutual_information(&result.state)? / 2.0
    );
    Ok(())
}
