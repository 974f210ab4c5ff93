//! Writes joint-density and Wigner heat maps of an exact ground state as SVG.
//!
//! ```text
//! cargo run --release --example wigner_maps -- [out_dir] [theta] [d]
//! ```

use std::path::PathBuf;

use qdo::fock::{joint_position_density, partial_trace, wigner_single_mode, Mode, QuadratureGrid};
use qdo::io::svg::Heatmap;
use qdo::model::{ModelParams, DEFAULT_QUAD_ORDER};
use qdo::oracle::ground_state_exact;

fn main() -> qdo::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().unwrap_or_else(|| "wigner-out".into()));
    let theta: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(0.58);
    let d: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(0.82);

    let (_, state) = ground_state_exact(
        &ModelParams::new(theta, d)?,
        Default::default(),
        DEFAULT_QUAD_ORDER,
    )?;

    let grid = QuadratureGrid::new(-4.0, 4.0, 161)?;
    let density = joint_position_density(&state, &grid)?;
    let map = Heatmap {
        title: format!("rho(x1, x2) at theta = {theta}, d = {d}"),
        x_label: "x1".into(),
        y_label: "x2".into(),
        x_range: (-4.0, 4.0),
        y_range: (-4.0, 4.0),
        nx: density.side(),
        ny: density.side(),
        values: density.values.clone(),
        diverging: false,
    };
    qdo::io::atomic_write(&out.join("density.svg"), map.to_svg().as_bytes())?;

    let phase = QuadratureGrid::new(-3.0, 3.0, 101)?;
    let w = wigner_single_mode(&partial_trace(&state, Mode::One)?, &phase, &phase);
    println!(
        "reduced Wigner: integral {:.6}, minimum {:.2e}",
        w.integral(),
        w.min()
    );
    let map = Heatmap {
        title: format!("W(x, p) of mode 1 at theta = {theta}, d = {d}"),
        x_label: "x".into(),
        y_label: "p".into(),
        x_range: (-3.0, 3.0),
        y_range: (-3.0, 3.0),
        nx: w.x_grid.len(),
        ny: w.p_grid.len(),
        values: w.values,
        diverging: true,
    };
    qdo::io::atomic_write(&out.join("wigner1.svg"), map.to_svg().as_bytes())?;
    println!(
        "wrote {}/density.svg and {}/wigner1.svg",
        out.display(),
        out.display()
    );
    Ok(())
}
