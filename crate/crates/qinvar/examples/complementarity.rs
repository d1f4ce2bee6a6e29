//! The complementarity budget: for a pure d x d state, local information
//! plus (normalized) tangle is exactly 2 log2 d; for mixed states the
//! identity relaxes to an inequality with a nonnegative defect.
//!
//! Run with: cargo run --example complementarity

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qinvar::entangle::{mixed_complementarity_defect, pure_complementarity_residual, pure_tangle};
use qinvar::invinfo::invariant_info_closed;
use qinvar::qlinalg::{random_density_matrix, random_pure_state, PureState};

fn main() -> qinvar::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);

    // Identity on random two-qutrit pure states.
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let psi = random_pure_state(&[3, 3], &mut rng);
        worst = worst.max(pure_complementarity_residual(&psi)?.abs());
    }
    println!("pure identity over 1000 random two-qutrit states: worst residual {worst:.3e}");

    // The budget split for one sample state.
    let psi = random_pure_state(&[3, 3], &mut rng);
    let rho = psi.to_density();
    let i1 = invariant_info_closed(&rho.partial_trace(&[0])?)?.bits;
    let i2 = invariant_info_closed(&rho.partial_trace(&[1])?)?.bits;
    let tau = pure_tangle(&psi, &[0])?;
    println!("\nsample split: I1 = {i1:.6}, I2 = {i2:.6}, tangle = {tau:.6}");
    println!(
        "I1 + I2 + (3/2)log2(3) tau = {:.9}",
        i1 + i2 + 1.5 * 3f64.log2() * tau
    );
    println!("2 log2 3                   = {:.9}", 2.0 * 3f64.log2());

    // Extremes: maximal entanglement puts the whole budget in the
    // tangle; a product state puts it all in local information.
    let bell = PureState::max_entangled(3);
    println!(
        "\nmaximally entangled: tangle = {:.6}, residual = {:.2e}",
        pure_tangle(&bell, &[0])?,
        pure_complementarity_residual(&bell)?
    );

    // Mixed states: the defect is nonnegative.
    let mut min_defect = f64::INFINITY;
    for _ in 0..1000 {
        let rho = random_density_matrix(&[3, 3], 9, &mut rng);
        min_defect = min_defect.min(mixed_complementarity_defect(&rho)?);
    }
    println!("\nmixed inequality over 1000 random states: minimum defect {min_defect:.3e} (>= 0)");
    Ok(())
}
