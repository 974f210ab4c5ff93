//! Scans a distance window for a joint position density with two separated
//! maxima, as happens at small angles where the drudons sit on either side.

use qdo::analysis::find_bimodality;
use qdo::fock::{joint_position_density, FockConfig, QuadratureGrid};
use qdo::model::{ModelParams, DEFAULT_QUAD_ORDER};
use qdo::oracle::ground_state_exact;

fn main() -> qdo::Result<()> {
    let theta: f64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(0.17);
    let grid = QuadratureGrid::new(-4.0, 4.0, 161)?;

    for k in 0..=10 {
        let d = 1.2 + 0.1 * k as f64;
        let p = ModelParams::new(theta, d)?;
        let (energy, state) = ground_state_exact(&p, FockConfig::default(), DEFAULT_QUAD_ORDER)?;
        let density = joint_position_density(&state, &grid)?;
        match find_bimodality(&density, 0.1) {
            Some(b) => {
                let [(x1, y1, _), (x2, y2, _)] = b.peaks;
                println!(
                    "d = {d:.1}  E = {energy:.5}  peaks ({x1:+.2}, {y1:+.2}) and ({x2:+.2}, {y2:+.2}), dip {:.1}%",
                    100.0 * b.relative_dip
                );
            }
            None => println!("d = {d:.1}  E = {energy:.5}  unimodal"),
        }
    }
    Ok(())
}
