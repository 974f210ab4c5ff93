//! Photonic gates and the layered variational circuit.

mod circuit;
mod ops;

pub use circuit::{
    apply_circuit, apply_layer, layer_matrix, CircuitOutput, CircuitParams, GateSet, LayerParams,
};
pub use ops::{
    beamsplitter_generator, build_beamsplitter, build_displacement, build_kerr, build_padded,
    build_rotation, build_squeeze, displacement_generator, squeeze_generator, MAX_DISPLACEMENT,
    MAX_SQUEEZE,
};
