//! Building states, applying gates and measuring in the Z, X and Bell bases.
//!
//! cargo run -p ghz-qsdc --example state_vectors

use ghz_qsdc::qsim::{
    fidelity, make_ghz, measure_bell, measure_x, measure_z, BellOutcome, Gate, Outcome,
    StateVector, XOutcome,
};
use ghz_qsdc::{QUBIT_A, QUBIT_B, QUBIT_T};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> ghz_qsdc::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    let ghz = make_ghz();
    println!("GHZ on (A, T, B): {ghz:?}");

    let rotated = ghz.apply_gate(Gate::Hadamard, QUBIT_A)?;
    println!("after H on A:     {rotated:?}");

    let px = rotated.probabilities::<XOutcome>(&[QUBIT_T])?;
    println!("P(x on T) = {px:?} for outcomes {:?}", XOutcome::ALL);

    let pb = rotated.probabilities::<BellOutcome>(&[QUBIT_A, QUBIT_B])?;
    println!("P(Bell on A,B) = {pb:?}");

    let (x, post) = measure_x(&rotated, QUBIT_T, &mut rng)?;
    let (bell, post) = measure_bell(&post, QUBIT_A, QUBIT_B, &mut rng)?;
    println!("sampled: T -> |{x}>, (A,B) -> {bell}; post-state {post:?}");

    let (z, collapsed) = measure_z(&ghz, QUBIT_A, &mut rng)?;
    let expected = StateVector::basis(
        3,
        if z == ghz_qsdc::qsim::ZOutcome::Zero {
            0
        } else {
            7
        },
    )?;
    println!(
        "z on A of GHZ -> {z}, fidelity with |{z}{z}{z}> = {:.3}",
        fidelity(&collapsed, &expected)?
    );
    Ok(())
}
