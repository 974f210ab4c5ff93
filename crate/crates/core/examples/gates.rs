//! The photonic gate set on a small Fock space: unitarity, photon-number
//! conservation of the beamsplitter and the effect of one circuit layer.

use qdo::fock::{number_expectation, FockConfig, FockVector, Mode};
use qdo::gates::{
    apply_circuit, build_beamsplitter, build_displacement, build_kerr, build_squeeze, CircuitParams,
};
use qdo::linalg::{is_unitary, kron};
use qdo::C64;

fn main() -> qdo::Result<()> {
    let dim = 5;
    let s = build_squeeze(0.3, dim)?;
    let d = build_displacement(C64::new(0.5, -0.2), dim)?;
    let k = build_kerr(0.4, dim);
    let bs = build_beamsplitter(0.7, 0.3, dim);

    println!("Gate matrices at dim {dim}:");
    println!("  squeeze unitary to 1e-12:      {}", is_unitary(&s, 1e-12));
    println!("  displacement unitary to 1e-12: {}", is_unitary(&d, 1e-12));
    println!("  Kerr unitary:                  {}", is_unitary(&k, 1e-12));
    println!(
        "  beamsplitter unitary:          {}",
        is_unitary(&bs, 1e-12)
    );

    let config = FockConfig::new(dim)?;
    let one_photon = FockVector::basis(config, 1, 0);
    let v = &bs * nalgebra::DVector::from_column_slice(one_photon.amplitudes());
    let out = FockVector::from_amplitudes(config, v.iter().copied().collect())?;
    let n = number_expectation(&out, Mode::One)? + number_expectation(&out, Mode::Two)?;
    println!("\nBS|1,0>: <n1 + n2> = {n:.12}");
    println!("  amplitude on |1,0>: {:.6}", out.amplitude(1, 0));
    println!("  amplitude on |0,1>: {:.6}", out.amplitude(0, 1));

    let local = kron(&s, &build_squeeze(-0.3, dim)?);
    println!("\nS(0.3) ⊗ S(-0.3) unitary: {}", is_unitary(&local, 1e-12));

    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
    let params = CircuitParams::random(8, 0.3, &mut rng);
    let run = apply_circuit(&params, config)?;
    println!(
        "\n8-layer circuit ({} parameters) on the vacuum: norm = {:.15}",
        params.len(),
        run.norm
    );
    Ok(())
}
