//! Lowest levels of the truncated Hamiltonian and their convergence in the
//! Fock cutoff.

use qdo::fock::FockConfig;
use qdo::model::{ModelParams, DEFAULT_QUAD_ORDER};
use qdo::oracle::spectrum_exact;

fn main() -> qdo::Result<()> {
    let mut args = std::env::args().skip(1);
    let theta: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(0.58);
    let d: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(1.36);
    let p = ModelParams::new(theta, d)?;

    println!("theta = {theta}, d = {d}");
    for dim in [3, 5, 7, 10] {
        let levels = spectrum_exact(
            &p,
            FockConfig::new(dim)?,
            DEFAULT_QUAD_ORDER.max(2 * dim),
            4,
        )?;
        let shown: Vec<String> = levels.iter().map(|e| format!("{e:9.5}")).collect();
        println!("dim {dim:>2}: {}", shown.join(" "));
    }
    Ok(())
}
