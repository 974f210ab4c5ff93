//! Drives a sweep from a TOML config and writes the same artifacts as
//! `qdo sweep`: one CSV per angle plus a manifest.

use std::path::PathBuf;

use qdo::analysis::sweep_with_order;
use qdo::io::{
    curve_file_name, read_curve_csv, write_curve_csv, ManifestPoint, RunConfig, RunManifest,
};

const CONFIG: &str = r#"
seed = 11
engines = ["oracle"]

[model]
theta = [0.58, 1.25]
d_grid = { min = 0.3, max = 3.5, count = 16 }

[output]
directory = "config-run-out"
"#;

fn main() -> qdo::Result<()> {
    let config = RunConfig::from_toml_str(CONFIG)?;
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| config.output.directory.clone()),
    );
    let mut manifest = RunManifest::start("example config_run", &config);

    for engine in &config.engines {
        for theta in config.thetas() {
            let curve = sweep_with_order(
                theta,
                &config.distances(),
                &config.base_params(),
                &config.vqe_config()?,
                *engine,
                config.model.quad_order,
            )?;
            let path = out.join(curve_file_name(*engine, theta));
            write_curve_csv(&path, &curve)?;
            assert_eq!(read_curve_csv(&path)?.points.len(), curve.points.len());
            for p in &curve.points {
                manifest.points.push(ManifestPoint {
                    engine: *engine,
                    theta,
                    d: p.d,
                    status: p.status.to_string(),
                });
            }
            let min = curve.minimum().map_or(f64::NAN, |p| p.e_b);
            println!(
                "{engine} theta={theta}: min E_b = {min:.4} -> {}",
                path.display()
            );
        }
    }
    manifest.finish();
    manifest.write(&out)?;
    Ok(())
}
