//! Build the complete set of d+1 mutually unbiased bases for every
//! supported prime-power dimension and verify the overlap and trace
//! identities.
//!
//! Run with: cargo run --example mub_bases

use qinvar::mub::{build_mubs, verify_mubs};

fn main() -> qinvar::Result<()> {
    println!(
        "{:>3}  {:>6}  {:>14}  {:>16}  {:>14}  construction",
        "d", "bases", "overlap err", "trace-id err", "ortho err"
    );
    for d in [2usize, 3, 4, 5, 7, 8, 9, 16] {
        let set = build_mubs(d)?;
        let report = verify_mubs(&set, 1e-10);
        println!(
            "{:>3}  {:>6}  {:>14.3e}  {:>16.3e}  {:>14.3e}  {:?}",
            d,
            set.bases().len(),
            report.max_overlap_error,
            report.max_trace_identity_error,
            report.orthonormality_error,
            set.construction_tag()
        );
    }

    // The qubit set is the familiar Z, X, Y triple.
    let set = build_mubs(2)?;
    println!("\nd = 2 bases (columns are basis vectors):");
    for (alpha, basis) in set.bases().iter().enumerate() {
        println!("basis {alpha}:");
        for r in 0..2 {
            let row: Vec<String> = (0..2)
                .map(|c| format!("{:+.3}{:+.3}i", basis[(r, c)].re, basis[(r, c)].im))
                .collect();
            println!("  [{}]", row.join(", "));
        }
    }
    Ok(())
}
