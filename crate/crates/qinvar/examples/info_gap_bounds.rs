//! The information gap I(rho_12) - I(rho_1) - I(rho_2): unlike entropy
//! it can be negative, and purification sandwiches it between computable
//! bounds. Reproduces the diag(5,4,2,1)/12 counterexample with its exact
//! -5/54 gap and the maximally entangled states that attain the upper
//! bound.
//!
//! Run with: cargo run --example info_gap_bounds

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qinvar::entangle::info_gap_report;
use qinvar::qlinalg::{random_density_matrix, DensityMatrix, PureState};

fn main() -> qinvar::Result<()> {
    // The separable two-qubit state with a negative gap.
    let rho =
        DensityMatrix::from_diagonal(&[5.0 / 12.0, 4.0 / 12.0, 2.0 / 12.0, 1.0 / 12.0], &[2, 2])?;
    let report = info_gap_report(&rho)?;
    println!("diag(5,4,2,1)/12:");
    println!(
        "  I_12 = {:.9}, I_1 = {:.9}, I_2 = {:.9}",
        report.info_12, report.info_1, report.info_2
    );
    println!(
        "  gap = {:.12}  (exactly -5/54 = {:.12})",
        report.gap,
        -5.0 / 54.0
    );
    println!(
        "  bounds: [{:.6}, {:.6}], tangle method {:?}",
        report.lower_bound, report.upper_bound, report.tangle_method
    );

    // Maximal entanglement attains the upper bound 2 log2 d.
    for d in [2usize, 3] {
        let bell = PureState::max_entangled(d).to_density();
        let report = info_gap_report(&bell)?;
        println!(
            "\nmaximally entangled d = {d}: gap = {:.9} (upper bound {:.9})",
            report.gap, report.upper_bound
        );
    }

    // Random mixed states always sit inside the sandwich.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut tightest = f64::INFINITY;
    for _ in 0..500 {
        let rho = random_density_matrix(&[3, 3], 9, &mut rng);
        let report = info_gap_report(&rho)?;
        tightest = tightest.min(report.gap - report.lower_bound);
    }
    println!("\n500 random two-qutrit states: smallest gap-minus-lower-bound margin {tightest:.6}");
    Ok(())
}
