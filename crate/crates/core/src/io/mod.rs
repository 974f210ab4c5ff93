//! Run configuration, persistence and the `qdo` batch driver.

pub mod cli;
mod config;
mod files;
mod manifest;
pub mod svg;

pub use config::{
    AnalysisSection, DGridSpec, FockSection, GridSpec, ModelSection, OneOrMany, OutputSection,
    RunConfig, VqeSection, PRESETS,
};
pub use files::{
    atomic_write, curve_file_name, parse_curve_file_name, read_curve_csv, read_state_json,
    write_curve_csv, write_json, write_state_json, PointRecord, StateRecord, CURVE_HEADER,
};
pub use manifest::{ManifestPoint, RunManifest, ARTIFACT_VERSION};
