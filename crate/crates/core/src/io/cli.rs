//! The `qdo` command line.
//!
//! Exit codes: 0 success, 1 configuration or input error, 2 solver failure,
//! 3 sweep with fewer than 90% successful rows.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use super::files::{
    atomic_write, curve_file_name, parse_curve_file_name, read_curve_csv, read_state_json,
    write_curve_csv, write_json, write_state_json, PointRecord, StateRecord,
};
use super::manifest::{ManifestPoint, RunManifest, ARTIFACT_VERSION};
use super::svg::{Heatmap, LinePlot, Series};
use super::{OneOrMany, RunConfig};
use crate::analysis::{
    correlation_coefficient, critical_angle_bracket, entropy_profile, fit_cat_in, fit_morse,
    inflection_point, morse, sweep_with_order, BindingCurve, Engine, MorseFit,
};
use crate::error::{QdoError, Result};
use crate::fock::{
    joint_position_density, mutual_information, partial_trace, wigner_antisymmetric_slice,
    wigner_single_mode, Mode, QuadratureGrid,
};
use crate::model::uncoupled_ground_energy;
use crate::oracle::ground_state_exact;
use crate::vqe::{point_seed, train, Init, VqeConfig};

/// Minimum share of successful rows for a sweep to exit cleanly.
pub const SWEEP_OK_FRACTION: f64 = 0.9;

#[derive(Debug, Parser)]
#[command(
    name = "qdo",
    version,
    about = "Two-oscillator Coulomb binding: variational and exact ground states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// TOML config file or built-in preset name.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<String>,
    #[arg(long, global = true, value_name = "X", allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, global = true, value_name = "X")]
    pub d: Option<f64>,
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_parser = parse_engine)]
    pub engine: Option<Engine>,
}

fn parse_engine(s: &str) -> std::result::Result<Engine, String> {
    s.parse().map_err(|e: QdoError| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train the circuit at one geometry.
    Vqe,
    /// Exact diagonalization at one geometry.
    Oracle,
    /// Binding curves for every configured θ and engine.
    Sweep,
    /// Morse fits, smoothed entropy and inflection report from curve CSVs.
    Analyze {
        /// Curve CSVs or directories holding them; defaults to the output directory.
        inputs: Vec<PathBuf>,
    },
    /// SVG figures from curve CSVs and state JSON files.
    Render { inputs: Vec<PathBuf> },
}

/// Failures that end a command, tagged with their exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<QdoError> for Failure {
    fn from(e: QdoError) -> Self {
        let code = match e {
            QdoError::Config(_) | QdoError::Io(_) | QdoError::ParameterOutOfRange { .. } => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn config_error(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: msg.into(),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let command_line = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let outcome = thread_pool().and_then(|pool| pool.install(|| execute(&cli, &command_line)));
    match outcome {
        Ok(code) => code,
        Err(f) => {
            eprintln!("qdo: {}", f.message);
            f.code
        }
    }
}

/// Worker pool sized by `QDO_THREADS`, defaulting to the available cores.
fn thread_pool() -> std::result::Result<rayon::ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("QDO_THREADS") {
        let n: usize =
            v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
                config_error(format!("QDO_THREADS={v:?} is not a positive integer"))
            })?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| config_error(e.to_string()))
}

fn execute(cli: &Cli, command_line: &str) -> std::result::Result<i32, Failure> {
    let config = resolve_config(&cli.common, matches!(cli.command, Command::Sweep))?;
    let out = PathBuf::from(&config.output.directory);
    match &cli.command {
        Command::Vqe => point_command(&config, &cli.common, Engine::Vqe, &out, command_line),
        Command::Oracle => point_command(&config, &cli.common, Engine::Oracle, &out, command_line),
        Command::Sweep => sweep_command(&config, &out, command_line),
        Command::Analyze { inputs } => analyze_command(&config, inputs, &out),
        Command::Render { inputs } => render_command(&config, inputs, &out),
    }
}

/// Loads the config and folds the command-line overrides into it, so the
/// manifest snapshot alone reproduces the run.
fn resolve_config(common: &Common, sweep: bool) -> std::result::Result<RunConfig, Failure> {
    let mut config = match &common.config {
        Some(src) => RunConfig::load(src)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    if let Some(theta) = common.theta {
        config.model.theta = OneOrMany::One(theta);
    }
    if let Some(engine) = common.engine {
        config.engines = vec![engine];
    }
    if let Some(out) = &common.out {
        config.output.directory = out.to_string_lossy().into_owned();
    }
    if let (true, Some(d)) = (sweep, common.d) {
        config.model.d_grid.min = 0.0;
        config.model.d_grid.max = d;
        config.model.d_grid.count = 1;
    }
    config.validate()?;
    Ok(config)
}

fn tag(engine: Engine, theta: f64, d: Option<f64>) -> String {
    match d {
        Some(d) => format!("{engine}_theta{theta}_d{d}"),
        None => format!("{engine}_theta{theta}"),
    }
}

fn solve_point(
    config: &RunConfig,
    engine: Engine,
    theta: f64,
    d: f64,
) -> Result<(PointRecord, StateRecord)> {
    let p = config.model_params(theta, d)?;
    let vqe_cfg = config.vqe_config()?;
    let seed = point_seed(config.seed, theta, d);
    let (energy, norm, state, steps, converged, params) = match engine {
        Engine::Oracle => {
            let (energy, state) = ground_state_exact(&p, vqe_cfg.fock, config.model.quad_order)?;
            (energy, 1.0, state, None, None, None)
        }
        Engine::Vqe => {
            let r = train(
                &p,
                &VqeConfig {
                    seed,
                    ..vqe_cfg.clone()
                },
                Init::Random,
            )?;
            (
                r.energy,
                r.final_norm,
                r.state,
                Some(r.steps_taken),
                Some(r.converged),
                Some(r.params.to_flat()),
            )
        }
    };
    let cat_fit = if config.analysis.cat_fit {
        Some(fit_cat_in(&state, &config.analysis.cat_search)?)
    } else {
        None
    };
    let record = PointRecord {
        version: ARTIFACT_VERSION.to_string(),
        engine,
        theta,
        d,
        seed,
        energy,
        e_b: energy - uncoupled_ground_energy(&p),
        norm,
        entropy: mutual_information(&state)? / 2.0,
        correlation: correlation_coefficient(&state, &vqe_cfg.grid)?,
        cat_fit,
        steps,
        converged,
        params,
    };
    Ok((record, StateRecord::new(theta, d, &state)))
}

fn point_command(
    config: &RunConfig,
    common: &Common,
    engine: Engine,
    out: &Path,
    command_line: &str,
) -> std::result::Result<i32, Failure> {
    let d = common
        .d
        .ok_or_else(|| config_error("--d is required for single-point runs"))?;
    let theta = match config.thetas().as_slice() {
        [theta] => *theta,
        _ => return Err(config_error("single-point runs need one θ; pass --theta")),
    };
    let mut manifest = RunManifest::start(command_line, config);
    manifest.points.push(ManifestPoint {
        engine,
        theta,
        d,
        status: "pending".into(),
    });
    manifest.write(out)?;

    let result = solve_point(config, engine, theta, d);
    manifest.points[0].status = match &result {
        Ok(_) => "ok".into(),
        Err(e) => format!("failed: {e}"),
    };
    manifest.finish();
    manifest.write(out)?;
    let (record, state) = result?;

    let name = tag(engine, theta, Some(d));
    write_json(&out.join(format!("point_{name}.json")), &record)?;
    if config.output.states {
        write_state_json(&out.join(format!("state_{name}.json")), &[state])?;
    }
    println!(
        "{engine} theta={theta} d={d}: energy={:.6} E_b={:.6}",
        record.energy, record.e_b
    );
    Ok(0)
}

fn sweep_command(
    config: &RunConfig,
    out: &Path,
    command_line: &str,
) -> std::result::Result<i32, Failure> {
    let distances = config.distances();
    let jobs: Vec<(Engine, f64)> = config
        .engines
        .iter()
        .flat_map(|&e| config.thetas().into_iter().map(move |t| (e, t)))
        .collect();

    let mut manifest = RunManifest::start(command_line, config);
    for &(engine, theta) in &jobs {
        for &d in &distances {
            manifest.points.push(ManifestPoint {
                engine,
                theta,
                d,
                status: "pending".into(),
            });
        }
    }
    manifest.write(out)?;

    let base = config.base_params();
    let vqe_cfg = config.vqe_config()?;
    let curves: Vec<Result<BindingCurve>> = jobs
        .par_iter()
        .map(|&(engine, theta)| {
            let curve = sweep_with_order(
                theta,
                &distances,
                &base,
                &vqe_cfg,
                engine,
                config.model.quad_order,
            )?;
            eprintln!(
                "{engine} theta={theta}: {}/{} points ok",
                curve.ok_points().count(),
                curve.points.len()
            );
            Ok(curve)
        })
        .collect();

    let (mut ok, mut total) = (0usize, 0usize);
    manifest.points.clear();
    for (&(engine, theta), curve) in jobs.iter().zip(curves) {
        let curve = curve?;
        for p in &curve.points {
            manifest.points.push(ManifestPoint {
                engine,
                theta,
                d: p.d,
                status: p.status.to_string(),
            });
            total += 1;
            ok += usize::from(p.status.is_ok());
        }
        if config.output.wants("csv") {
            write_curve_csv(&out.join(curve_file_name(engine, theta)), &curve)?;
        }
        if config.output.states {
            let states: Vec<StateRecord> = curve
                .points
                .iter()
                .filter_map(|p| p.state.as_ref().map(|s| StateRecord::new(theta, p.d, s)))
                .collect();
            write_state_json(
                &out.join(format!("state_{}.json", tag(engine, theta, None))),
                &states,
            )?;
        }
        if config.output.wants("svg") {
            render_curve(&curve, engine, config.analysis.bandwidth, out)?;
        }
    }
    manifest.finish();
    manifest.write(out)?;

    let fraction = if total == 0 {
        1.0
    } else {
        ok as f64 / total as f64
    };
    if fraction < SWEEP_OK_FRACTION {
        eprintln!("qdo: only {ok}/{total} points succeeded");
        return Ok(3);
    }
    Ok(0)
}

/// Files under `inputs` (directories expanded one level) accepted by `keep`;
/// with no inputs, the output directory is scanned.
fn collect_inputs(
    inputs: &[PathBuf],
    out: &Path,
    keep: impl Fn(&str) -> bool,
) -> std::result::Result<Vec<PathBuf>, Failure> {
    let roots: Vec<PathBuf> = if inputs.is_empty() {
        vec![out.to_path_buf()]
    } else {
        inputs.to_vec()
    };
    let mut files = Vec::new();
    for root in roots {
        if root.is_dir() {
            let entries = std::fs::read_dir(&root)
                .map_err(|e| config_error(format!("{}: {e}", root.display())))?;
            let mut found: Vec<PathBuf> = entries
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.file_name().is_some_and(|n| keep(&n.to_string_lossy())))
                .collect();
            found.sort();
            files.extend(found);
        } else if root.is_file() {
            files.push(root);
        } else {
            return Err(config_error(format!(
                "{}: no such file or directory",
                root.display()
            )));
        }
    }
    Ok(files)
}

#[derive(Serialize)]
struct MorseReport<'a> {
    version: &'a str,
    engine: Engine,
    theta: f64,
    fit: Option<MorseFit>,
    inflection: Option<f64>,
    error: Option<String>,
}

fn analyze_command(
    config: &RunConfig,
    inputs: &[PathBuf],
    out: &Path,
) -> std::result::Result<i32, Failure> {
    let files = collect_inputs(inputs, out, |n| parse_curve_file_name(n).is_some())?;
    if files.is_empty() {
        return Err(config_error("no curve CSV files found"));
    }
    let mut curves: Vec<(Engine, BindingCurve)> = Vec::new();
    for f in &files {
        let name = f
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let (engine, _) = parse_curve_file_name(&name)
            .ok_or_else(|| config_error(format!("{name}: not a curve file")))?;
        curves.push((engine, read_curve_csv(f)?));
    }
    curves.sort_by(|a, b| {
        (a.0 as u8, a.1.theta)
            .partial_cmp(&(b.0 as u8, b.1.theta))
            .expect("finite θ")
    });

    let mut report =
        String::from("engine\ttheta\tE_b\td_b\ts\tresidual\td_star\tentropy_peak_d\tstatus\n");
    for (engine, curve) in &curves {
        let name = tag(*engine, curve.theta, None);
        let fit = if config.analysis.morse {
            Some(fit_morse(curve))
        } else {
            None
        };
        let (fit, error) = match fit {
            Some(Ok(f)) => (Some(f), None),
            Some(Err(e)) => (None, Some(e.to_string())),
            None => (None, Some("disabled".into())),
        };
        let inflection = fit.as_ref().map(inflection_point);
        write_json(
            &out.join(format!("morse_{name}.json")),
            &MorseReport {
                version: ARTIFACT_VERSION,
                engine: *engine,
                theta: curve.theta,
                fit,
                inflection,
                error: error.clone(),
            },
        )?;

        let profile = entropy_profile(curve, config.analysis.bandwidth);
        let mut csv = String::from("d,entropy_smooth\n");
        for (d, s) in &profile.smooth {
            csv.push_str(&format!("{d},{s}\n"));
        }
        atomic_write(&out.join(format!("entropy_{name}.csv")), csv.as_bytes())?;

        let peak = profile
            .peak()
            .map_or("-".into(), |(d, _)| format!("{d:.4}"));
        let status = match &error {
            None if fit.is_some_and(|f| f.converged) => "ok".to_string(),
            None => "not converged".to_string(),
            Some(e) => format!("fit failed: {e}"),
        };
        match fit {
            Some(f) => report.push_str(&format!(
                "{engine}\t{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{peak}\t{status}\n",
                curve.theta,
                f.e_b,
                f.d_b,
                f.s,
                f.residual_l2,
                inflection_point(&f)
            )),
            None => report.push_str(&format!(
                "{engine}\t{}\t-\t-\t-\t-\t-\t{peak}\t{status}\n",
                curve.theta
            )),
        }
    }
    for engine in [Engine::Oracle, Engine::Vqe] {
        let group: Vec<BindingCurve> = curves
            .iter()
            .filter(|(e, _)| *e == engine)
            .map(|(_, c)| c.clone())
            .collect();
        if group.len() > 1 {
            let bracket = critical_angle_bracket(&group, 1e-3)
                .map_or("none in range".to_string(), |(a, b)| format!("({a}, {b})"));
            report.push_str(&format!(
                "# {engine}: binding disappears between theta {bracket}\n"
            ));
        }
    }
    atomic_write(&out.join("analysis_report.tsv"), report.as_bytes())?;
    print!("{report}");
    Ok(0)
}

fn write_svg(path: &Path, svg: &str) -> Result<()> {
    atomic_write(path, svg.as_bytes())
}

fn render_curve(curve: &BindingCurve, engine: Engine, bandwidth: f64, out: &Path) -> Result<()> {
    let name = tag(engine, curve.theta, None);
    let ok: Vec<_> = curve.ok_points().collect();

    let mut binding = LinePlot::new(
        &format!("Binding energy, {engine}, theta = {}", curve.theta),
        "d",
        "E_b",
    )
    .with(Series::markers(
        "E_b",
        ok.iter().map(|p| (p.d, p.e_b)).collect(),
    ));
    if let Ok(fit) = fit_morse(curve) {
        let (lo, hi) = (
            ok.first().map_or(0.0, |p| p.d),
            ok.last().map_or(1.0, |p| p.d),
        );
        let line = (0..=200)
            .map(|k| lo + (hi - lo) * k as f64 / 200.0)
            .map(|d| (d, morse(d, fit.e_b, fit.d_b, fit.s)))
            .collect();
        binding = binding.with(Series::line("Morse fit", line));
    }
    write_svg(&out.join(format!("binding_{name}.svg")), &binding.to_svg())?;

    let profile = entropy_profile(curve, bandwidth);
    let entropy = LinePlot::new(
        &format!("Entanglement entropy, {engine}, theta = {}", curve.theta),
        "d",
        "S (nats)",
    )
    .with(Series::markers("S", profile.points.clone()))
    .with(Series::line("smoothed", profile.smooth.clone()));
    write_svg(&out.join(format!("entropy_{name}.svg")), &entropy.to_svg())?;

    let correlation = LinePlot::new(
        &format!("Position correlation, {engine}, theta = {}", curve.theta),
        "d",
        "corr(x1, x2)",
    )
    .with(Series::line(
        "corr",
        ok.iter().map(|p| (p.d, p.correlation)).collect(),
    ));
    write_svg(
        &out.join(format!("correlation_{name}.svg")),
        &correlation.to_svg(),
    )
}

fn render_state(record: &StateRecord, engine: &str, out: &Path) -> Result<()> {
    let state = record.to_state()?;
    let name = format!("{engine}_theta{}_d{}", record.theta, record.d);
    let grid = QuadratureGrid::new(-4.0, 4.0, 121)?;
    let density = joint_position_density(&state, &grid)?;
    let map = Heatmap {
        title: format!(
            "Joint position density, theta = {}, d = {}",
            record.theta, record.d
        ),
        x_label: "x1".into(),
        y_label: "x2".into(),
        x_range: (grid.min(), grid.max()),
        y_range: (grid.min(), grid.max()),
        nx: density.side(),
        ny: density.side(),
        values: density.values.clone(),
        diverging: false,
    };
    write_svg(&out.join(format!("density_{name}.svg")), &map.to_svg())?;

    let phase = QuadratureGrid::new(-4.0, 4.0, 81)?;
    let rho1 = partial_trace(&state, Mode::One)?;
    let fields = [
        (
            "wigner1",
            "Reduced Wigner function, mode 1",
            "x",
            "p",
            wigner_single_mode(&rho1, &phase, &phase),
        ),
        (
            "wigner_anti",
            "Wigner slice x1 = -x2, p1 = -p2",
            "x",
            "p",
            wigner_antisymmetric_slice(&state, &phase, &phase)?,
        ),
    ];
    for (prefix, title, xl, yl, w) in fields {
        let map = Heatmap {
            title: format!("{title}, theta = {}, d = {}", record.theta, record.d),
            x_label: xl.into(),
            y_label: yl.into(),
            x_range: (phase.min(), phase.max()),
            y_range: (phase.min(), phase.max()),
            nx: w.x_grid.len(),
            ny: w.p_grid.len(),
            values: w.values,
            diverging: true,
        };
        write_svg(&out.join(format!("{prefix}_{name}.svg")), &map.to_svg())?;
    }
    Ok(())
}

fn state_engine(file_name: &str) -> Option<&str> {
    let rest = file_name.strip_prefix("state_")?.strip_suffix(".json")?;
    let (engine, _) = rest.split_once("_theta")?;
    Some(engine)
}

fn render_command(
    config: &RunConfig,
    inputs: &[PathBuf],
    out: &Path,
) -> std::result::Result<i32, Failure> {
    let files = collect_inputs(inputs, out, |n| {
        parse_curve_file_name(n).is_some() || state_engine(n).is_some()
    })?;
    if files.is_empty() {
        return Err(config_error("nothing to render"));
    }
    let mut written = 0;
    for f in &files {
        let name = f
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        if let Some((engine, _)) = parse_curve_file_name(&name) {
            render_curve(&read_curve_csv(f)?, engine, config.analysis.bandwidth, out)?;
            written += 3;
        } else if let Some(engine) = state_engine(&name) {
            for record in read_state_json(f)? {
                render_state(&record, engine, out)?;
                written += 3;
            }
        } else {
            return Err(config_error(format!(
                "{name}: expected curve_*.csv or state_*.json"
            )));
        }
    }
    eprintln!("wrote {written} SVG files to {}", out.display());
    Ok(0)
}
