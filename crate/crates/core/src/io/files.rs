use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{BindingCurve, CatFit, CurvePoint, Engine, PointStatus};
use crate::error::{QdoError, Result};
use crate::fock::{FockConfig, FockVector};
use crate::C64;

pub const CURVE_HEADER: [&str; 7] = [
    "d",
    "E_b",
    "energy",
    "norm",
    "entropy",
    "correlation",
    "status",
];

/// Writes through a sibling temporary file and a rename.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let name = path
        .file_name()
        .ok_or_else(|| QdoError::Io(format!("{} has no file name", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp", name.to_string_lossy()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| QdoError::Io(e.to_string()))?;
    text.push('\n');
    atomic_write(path, text.as_bytes())
}

/// `curve_<engine>_theta<θ>.csv`, with θ in shortest round-trip form.
pub fn curve_file_name(engine: Engine, theta: f64) -> String {
    format!("curve_{engine}_theta{theta}.csv")
}

pub fn parse_curve_file_name(name: &str) -> Option<(Engine, f64)> {
    let rest = name.strip_prefix("curve_")?.strip_suffix(".csv")?;
    let (engine, theta) = rest.split_once("_theta")?;
    Some((engine.parse().ok()?, theta.parse().ok()?))
}

pub fn write_curve_csv(path: &Path, curve: &BindingCurve) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io = |e: csv::Error| QdoError::Io(e.to_string());
    w.write_record(CURVE_HEADER).map_err(io)?;
    for p in &curve.points {
        w.write_record([
            p.d.to_string(),
            p.e_b.to_string(),
            p.energy.to_string(),
            p.norm.to_string(),
            p.entropy.to_string(),
            p.correlation.to_string(),
            p.status.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| QdoError::Io(e.to_string()))?;
    atomic_write(path, &bytes)
}

/// Reads a curve written by [`write_curve_csv`]; θ and the engine come from the file name.
pub fn read_curve_csv(path: &Path) -> Result<BindingCurve> {
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let (source, theta) = parse_curve_file_name(&name).ok_or_else(|| {
        QdoError::Config(format!("{name}: expected curve_<engine>_theta<value>.csv"))
    })?;
    let mut r = csv::Reader::from_path(path)
        .map_err(|e| QdoError::Io(format!("{}: {e}", path.display())))?;
    let bad = |msg: String| QdoError::Config(format!("{}: {msg}", path.display()));
    let header = r.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.iter().collect::<Vec<_>>() != CURVE_HEADER {
        return Err(bad(format!(
            "unexpected header {:?}",
            header.iter().collect::<Vec<_>>()
        )));
    }
    let mut points = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let num = |i: usize| -> Result<f64> {
            rec[i]
                .parse::<f64>()
                .map_err(|_| bad(format!("row {}: bad number {:?}", line + 1, &rec[i])))
        };
        points.push(CurvePoint {
            d: num(0)?,
            e_b: num(1)?,
            energy: num(2)?,
            norm: num(3)?,
            entropy: num(4)?,
            correlation: num(5)?,
            status: rec[6]
                .parse::<PointStatus>()
                .map_err(|e| bad(e.to_string()))?,
            source,
            state: None,
            params: None,
        });
    }
    if points.windows(2).any(|w| !(w[0].d < w[1].d)) {
        return Err(bad("d column must be strictly increasing".into()));
    }
    Ok(BindingCurve { theta, points })
}

/// One solved geometry as written by `qdo vqe` and `qdo oracle`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    pub version: String,
    pub engine: Engine,
    pub theta: f64,
    pub d: f64,
    pub seed: u64,
    pub energy: f64,
    pub e_b: f64,
    pub norm: f64,
    pub entropy: f64,
    pub correlation: f64,
    pub cat_fit: Option<CatFit>,
    pub steps: Option<usize>,
    pub converged: Option<bool>,
    /// Layer-major circuit parameters.
    pub params: Option<Vec<f64>>,
}

/// Ground-state amplitudes as `[re, im]` pairs, row-major in `(n1, n2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateRecord {
    pub theta: f64,
    pub d: f64,
    pub dim_per_mode: usize,
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateRecord {
    pub fn new(theta: f64, d: f64, state: &FockVector) -> Self {
        StateRecord {
            theta,
            d,
            dim_per_mode: state.config().dim_per_mode(),
            amplitudes: state.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
        }
    }

    pub fn to_state(&self) -> Result<FockVector> {
        let config = FockConfig::new(self.dim_per_mode)?;
        FockVector::from_amplitudes(
            config,
            self.amplitudes
                .iter()
                .map(|&[re, im]| C64::new(re, im))
                .collect(),
        )
    }
}

pub fn write_state_json(path: &Path, records: &[StateRecord]) -> Result<()> {
    write_json(path, &records)
}

pub fn read_state_json(path: &Path) -> Result<Vec<StateRecord>> {
    let text =
        fs::read_to_string(path).map_err(|e| QdoError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| QdoError::Config(format!("{}: {e}", path.display())))
}
