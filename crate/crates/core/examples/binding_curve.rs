//! Exact binding curve at one angle, its Morse fit and the inflection point.
//!
//! ```text
//! cargo run --release --example binding_curve -- [theta] [points]
//! ```

use qdo::analysis::{d_grid, fit_morse, inflection_point, sweep, Engine};
use qdo::model::ModelParams;
use qdo::vqe::VqeConfig;

fn main() -> qdo::Result<()> {
    let mut args = std::env::args().skip(1);
    let theta: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(0.58);
    let count: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(40);

    let curve = sweep(
        theta,
        &d_grid(0.3, 3.5, count),
        &ModelParams::default(),
        &VqeConfig::default(),
        Engine::Oracle,
    )?;

    println!("{:>6}  {:>10}  {:>8}  {:>8}", "d", "E_b", "S", "C");
    for p in &curve.points {
        println!(
            "{:>6.3}  {:>10.6}  {:>8.5}  {:>8.4}",
            p.d, p.e_b, p.entropy, p.correlation
        );
    }

    match fit_morse(&curve) {
        Ok(fit) => {
            println!();
            println!(
                "Morse fit: E_b = {:.4}, d_b = {:.4}, s = {:.4}",
                fit.e_b, fit.d_b, fit.s
            );
            println!(
                "residual  {:.5} over {} points (converged: {})",
                fit.residual_l2, fit.n_points, fit.converged
            );
            println!("d*        {:.4}", inflection_point(&fit));
        }
        Err(e) => println!("\nno Morse fit: {e}"),
    }
    Ok(())
}
