//! Invariant information two ways: the MUB outcome-statistics sum and
//! the closed form in the purity, which agree for every state. Also
//! probes the additivity relation, which holds only in special cases.
//!
//! Run with: cargo run --example invariant_information

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qinvar::invinfo::{additivity_probe, invariant_info_closed, invariant_info_mub};
use qinvar::mub::build_mubs;
use qinvar::qlinalg::{random_density_matrix, random_pure_state, DensityMatrix};

fn main() -> qinvar::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    println!("state                          I (MUB sum)    I (closed)     |diff|");
    for d in [2usize, 3, 5, 9] {
        let mubs = build_mubs(d)?;
        let mixed = DensityMatrix::maximally_mixed(&[d]);
        let pure = random_pure_state(&[d], &mut rng).to_density();
        let random = random_density_matrix(&[d], 0, &mut rng);
        for (label, rho) in [
            (format!("maximally mixed, d = {d}"), &mixed),
            (format!("random pure,     d = {d}"), &pure),
            (format!("random mixed,    d = {d}"), &random),
        ] {
            let a = invariant_info_mub(rho, &mubs)?.bits;
            let b = invariant_info_closed(rho)?.bits;
            println!("{label:<30} {a:>12.9}   {b:>12.9}   {:.3e}", (a - b).abs());
        }
    }

    // A pure d-level state carries log2 d bits; the uniform state none.
    println!("\npure qutrit carries log2 3 = {:.6} bits", 3f64.log2());

    // Additivity holds for pure (x) pure but not for generic factors.
    let pure = random_pure_state(&[2], &mut rng).to_density();
    let skewed = DensityMatrix::from_diagonal(&[0.75, 0.25], &[2])?;
    let probe = additivity_probe(&pure, &pure)?;
    println!(
        "\nadditivity, pure (x) pure:   lhs {:.6}, rhs {:.6}, gap {:+.6}",
        probe.lhs, probe.rhs, probe.gap
    );
    let probe = additivity_probe(&pure, &skewed)?;
    println!(
        "additivity, pure (x) mixed:  lhs {:.6}, rhs {:.6}, gap {:+.6}",
        probe.lhs, probe.rhs, probe.gap
    );
    Ok(())
}
