use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ops::{
    beamsplitter_generator, build_kerr, build_rotation, check_displacement, check_squeeze,
    displacement_generator, squeeze_generator,
};
use crate::error::{QdoError, Result};
use crate::fock::{FockConfig, FockVector};
use crate::linalg::{CMatrix, SpectralGenerator};
use crate::C64;

/// Gate parameters of one circuit layer.
///
/// Gate order: BS(bs1) · R(rot1) on mode 1 · S(r₁) ⊗ S(r₂) · BS(bs2) ·
/// R(rot2) on mode 1 · D(α₁) ⊗ D(α₂) · K(κ₁) ⊗ K(κ₂).
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct LayerParams {
    pub bs1_theta: f64,
    pub bs1_phi: f64,
    pub rot1: f64,
    pub squeeze: [f64; 2],
    pub bs2_theta: f64,
    pub bs2_phi: f64,
    pub rot2: f64,
    /// Displacement magnitudes `|αᵢ|` (a negative value flips the phase).
    pub disp_mag: [f64; 2],
    pub disp_phase: [f64; 2],
    pub kerr: [f64; 2],
}

impl LayerParams {
    pub const LEN: usize = 14;

    /// Flat order: bs1_theta, bs1_phi, rot1, r₁, r₂, bs2_theta, bs2_phi, rot2,
    /// |α₁|, arg α₁, |α₂|, arg α₂, κ₁, κ₂.
    pub fn to_array(&self) -> [f64; Self::LEN] {
        [
            self.bs1_theta,
            self.bs1_phi,
            self.rot1,
            self.squeeze[0],
            self.squeeze[1],
            self.bs2_theta,
            self.bs2_phi,
            self.rot2,
            self.disp_mag[0],
            self.disp_phase[0],
            self.disp_mag[1],
            self.disp_phase[1],
            self.kerr[0],
            self.kerr[1],
        ]
    }

    pub fn from_slice(v: &[f64]) -> Self {
        assert_eq!(v.len(), Self::LEN);
        LayerParams {
            bs1_theta: v[0],
            bs1_phi: v[1],
            rot1: v[2],
            squeeze: [v[3], v[4]],
            bs2_theta: v[5],
            bs2_phi: v[6],
            rot2: v[7],
            disp_mag: [v[8], v[10]],
            disp_phase: [v[9], v[11]],
            kerr: [v[12], v[13]],
        }
    }

    pub fn displacement(&self, mode: usize) -> C64 {
        C64::from_polar(self.disp_mag[mode], self.disp_phase[mode])
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

/// Parameters of the whole layered circuit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitParams {
    pub layers: Vec<LayerParams>,
}

impl CircuitParams {
    pub fn zeros(n_layers: usize) -> Self {
        assert!(n_layers >= 1, "a circuit needs at least one layer");
        CircuitParams {
            layers: vec![LayerParams::default(); n_layers],
        }
    }

    /// Every parameter drawn uniformly from `[−spread, spread]`.
    pub fn random<R: Rng>(n_layers: usize, spread: f64, rng: &mut R) -> Self {
        let flat: Vec<f64> = (0..n_layers * LayerParams::LEN)
            .map(|_| rng.gen_range(-spread..=spread))
            .collect();
        Self::from_flat(&flat).expect("length is a multiple of the layer size")
    }

    pub fn n_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn len(&self) -> usize {
        self.layers.len() * LayerParams::LEN
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Layer-major flattening.
    pub fn to_flat(&self) -> Vec<f64> {
        self.layers.iter().flat_map(|l| l.to_array()).collect()
    }

    pub fn from_flat(v: &[f64]) -> Result<Self> {
        if v.is_empty() || !v.len().is_multiple_of(LayerParams::LEN) {
            return Err(QdoError::Config(format!(
                "flat parameter vector length {} is not a positive multiple of {}",
                v.len(),
                LayerParams::LEN
            )));
        }
        Ok(CircuitParams {
            layers: v
                .chunks(LayerParams::LEN)
                .map(LayerParams::from_slice)
                .collect(),
        })
    }
}

/// Spectral decompositions of the fixed gate generators for one cutoff.
///
/// With `pad > 0` the single-mode squeezer and displacement are built on
/// `dim + pad` levels and projected onto the leading `dim × dim` block, which
/// makes them contractions rather than exact unitaries.
#[derive(Debug)]
pub struct GateSet {
    dim: usize,
    pad: usize,
    squeeze: SpectralGenerator,
    displacement: SpectralGenerator,
    beamsplitter: SpectralGenerator,
    bs_vectors_adj: CMatrix,
}

impl GateSet {
    pub fn new(dim: usize) -> Self {
        Self::with_padding(dim, 0)
    }

    pub fn with_padding(dim: usize, pad: usize) -> Self {
        assert!(dim >= 2);
        let beamsplitter = SpectralGenerator::new(&beamsplitter_generator(dim));
        let bs_vectors_adj = beamsplitter.vectors().adjoint();
        GateSet {
            dim,
            pad,
            squeeze: SpectralGenerator::new(&squeeze_generator(dim + pad)),
            displacement: SpectralGenerator::new(&displacement_generator(dim + pad)),
            beamsplitter,
            bs_vectors_adj,
        }
    }

    /// Process-wide instance for `(dim, pad)`.
    pub fn shared_padded(dim: usize, pad: usize) -> Arc<GateSet> {
        type Cache = Mutex<HashMap<(usize, usize), Arc<GateSet>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let mut map = CACHE
            .get_or_init(Default::default)
            .lock()
            .expect("gate cache poisoned");
        map.entry((dim, pad))
            .or_insert_with(|| Arc::new(GateSet::with_padding(dim, pad)))
            .clone()
    }

    pub fn shared(dim: usize) -> Arc<GateSet> {
        Self::shared_padded(dim, 0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pad(&self) -> usize {
        self.pad
    }

    fn project(&self, m: CMatrix) -> CMatrix {
        if self.pad == 0 {
            m
        } else {
            m.view((0, 0), (self.dim, self.dim)).into_owned()
        }
    }

    pub fn squeeze(&self, r: f64) -> Result<CMatrix> {
        check_squeeze(r)?;
        Ok(self.project(self.squeeze.exp(r)))
    }

    /// `D(α) = R(arg α) exp(|α|(a† − a)) R(−arg α)`.
    pub fn displacement(&self, alpha: C64) -> Result<CMatrix> {
        check_displacement(alpha)?;
        let (mag, phase) = alpha.to_polar();
        let mut m = self.project(self.displacement.exp(mag));
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] *= C64::from_polar(1.0, phase * (i as f64 - j as f64));
            }
        }
        Ok(m)
    }

    /// Applies `BS(θ, φ) = R₂(φ) BS(θ, 0) R₂(−φ)` in place.
    pub fn apply_beamsplitter(&self, theta: f64, phi: f64, state: &mut FockVector) {
        if theta == 0.0 {
            return;
        }
        let d = self.dim;
        let amps = state.amplitudes_mut();
        if phi != 0.0 {
            for n1 in 0..d {
                for n2 in 0..d {
                    amps[n1 * d + n2] *= C64::from_polar(1.0, -phi * n2 as f64);
                }
            }
        }
        let n = d * d;
        let mut coeffs = vec![C64::new(0.0, 0.0); n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (j, a) in amps.iter().enumerate() {
                acc += self.bs_vectors_adj[(k, j)] * a;
            }
            *c = acc * C64::from_polar(1.0, -self.beamsplitter.values()[k] * theta);
        }
        let vecs = self.beamsplitter.vectors();
        for (i, a) in amps.iter_mut().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (k, c) in coeffs.iter().enumerate() {
                acc += vecs[(i, k)] * c;
            }
            *a = acc;
        }
        if phi != 0.0 {
            for n1 in 0..d {
                for n2 in 0..d {
                    amps[n1 * d + n2] *= C64::from_polar(1.0, phi * n2 as f64);
                }
            }
        }
    }

    /// Applies independent single-mode operators on both modes: `A ↦ U₁ A U₂ᵀ`.
    pub fn apply_local(&self, u1: Option<&CMatrix>, u2: Option<&CMatrix>, state: &mut FockVector) {
        let cfg = state.config();
        let mut a = state.as_matrix();
        if let Some(u) = u1 {
            a = u * a;
        }
        if let Some(u) = u2 {
            a *= u.transpose();
        }
        *state = FockVector::from_matrix(cfg, &a).expect("shape preserved");
    }

    /// Diagonal phases `e^{i(f(n1) + g(n2))}` applied in place.
    fn apply_diagonal<F, G>(&self, f: F, g: G, state: &mut FockVector)
    where
        F: Fn(usize) -> f64,
        G: Fn(usize) -> f64,
    {
        let d = self.dim;
        let amps = state.amplitudes_mut();
        for n1 in 0..d {
            for n2 in 0..d {
                amps[n1 * d + n2] *= C64::from_polar(1.0, f(n1) + g(n2));
            }
        }
    }

    /// Zero-parameter gates are skipped so that they act as the exact identity.
    fn local_gate(
        &self,
        active: bool,
        build: impl FnOnce() -> Result<CMatrix>,
    ) -> Result<Option<CMatrix>> {
        if active {
            build().map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn apply_layer(&self, state: &FockVector, layer: &LayerParams) -> Result<FockVector> {
        if state.config().dim_per_mode() != self.dim {
            return Err(QdoError::Config(format!(
                "gate set built for cutoff {}, state has {}",
                self.dim,
                state.config().dim_per_mode()
            )));
        }
        let mut s = state.clone();
        self.apply_beamsplitter(layer.bs1_theta, layer.bs1_phi, &mut s);
        self.apply_diagonal(|n| layer.rot1 * n as f64, |_| 0.0, &mut s);
        let s1 = self.local_gate(layer.squeeze[0] != 0.0, || self.squeeze(layer.squeeze[0]))?;
        let s2 = self.local_gate(layer.squeeze[1] != 0.0, || self.squeeze(layer.squeeze[1]))?;
        self.apply_local(s1.as_ref(), s2.as_ref(), &mut s);
        self.apply_beamsplitter(layer.bs2_theta, layer.bs2_phi, &mut s);
        self.apply_diagonal(|n| layer.rot2 * n as f64, |_| 0.0, &mut s);
        let d1 = self.local_gate(layer.disp_mag[0] != 0.0, || {
            self.displacement(layer.displacement(0))
        })?;
        let d2 = self.local_gate(layer.disp_mag[1] != 0.0, || {
            self.displacement(layer.displacement(1))
        })?;
        self.apply_local(d1.as_ref(), d2.as_ref(), &mut s);
        self.apply_diagonal(
            |n| layer.kerr[0] * (n * n) as f64,
            |n| layer.kerr[1] * (n * n) as f64,
            &mut s,
        );
        Ok(s)
    }

    pub fn run(&self, params: &CircuitParams, config: FockConfig) -> Result<CircuitOutput> {
        let mut state = FockVector::vacuum(config);
        for layer in &params.layers {
            state = self.apply_layer(&state, layer)?;
        }
        let norm = state.norm();
        Ok(CircuitOutput { state, norm })
    }
}

/// Unnormalized circuit output and its norm.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitOutput {
    pub state: FockVector,
    pub norm: f64,
}

/// One layer on an arbitrary input state.
pub fn apply_layer(state: &FockVector, layer: &LayerParams) -> Result<FockVector> {
    GateSet::shared(state.config().dim_per_mode()).apply_layer(state, layer)
}

/// `U(ω)|0,0⟩`, without renormalization.
pub fn apply_circuit(params: &CircuitParams, config: FockConfig) -> Result<CircuitOutput> {
    GateSet::shared(config.dim_per_mode()).run(params, config)
}

/// Dense reference: the layer assembled from the matrix-exponential builders.
pub fn layer_matrix(layer: &LayerParams, dim: usize) -> Result<CMatrix> {
    use super::ops::{build_beamsplitter, build_displacement, build_squeeze};
    use crate::linalg::kron;
    let eye = CMatrix::identity(dim, dim);
    let mut u = build_beamsplitter(layer.bs1_theta, layer.bs1_phi, dim);
    u = kron(&build_rotation(layer.rot1, dim), &eye) * u;
    u = kron(
        &build_squeeze(layer.squeeze[0], dim)?,
        &build_squeeze(layer.squeeze[1], dim)?,
    ) * u;
    u = build_beamsplitter(layer.bs2_theta, layer.bs2_phi, dim) * u;
    u = kron(&build_rotation(layer.rot2, dim), &eye) * u;
    u = kron(
        &build_displacement(layer.displacement(0), dim)?,
        &build_displacement(layer.displacement(1), dim)?,
    ) * u;
    u = kron(
        &build_kerr(layer.kerr[0], dim),
        &build_kerr(layer.kerr[1], dim),
    ) * u;
    Ok(u)
}
