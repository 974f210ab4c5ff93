//! Fits the displaced-cat ansatz to exact ground states along a short sweep.

use qdo::analysis::{cat_state, fit_cat};
use qdo::fock::FockConfig;
use qdo::model::{ModelParams, DEFAULT_QUAD_ORDER};
use qdo::oracle::ground_state_exact;
use qdo::C64;

fn main() -> qdo::Result<()> {
    let config = FockConfig::default();

    let synthetic = cat_state(C64::new(0.7, 0.0), config)?;
    let fit = fit_cat(&synthetic)?;
    println!(
        "synthetic cat(0.7): alpha = {:.6}, fidelity = {:.10}",
        fit.alpha, fit.fidelity
    );
    println!();

    println!("{:>5}  {:>16}  {:>8}", "d", "alpha", "F");
    for d in [0.54, 0.78, 0.82, 1.36, 3.16] {
        let (_, state) =
            ground_state_exact(&ModelParams::new(0.58, d)?, config, DEFAULT_QUAD_ORDER)?;
        let fit = fit_cat(&state)?;
        println!("{d:>5.2}  {:>16.4}  {:>8.5}", fit.alpha, fit.fidelity);
    }
    Ok(())
}
