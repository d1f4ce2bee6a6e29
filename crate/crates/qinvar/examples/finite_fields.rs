//! Finite-field arithmetic: construct GF(p^k), exercise the operations,
//! and print the trace table that drives the odd-prime-power basis
//! construction.
//!
//! Run with: cargo run --example finite_fields

use qinvar::gf::Field;

fn main() -> qinvar::Result<()> {
    for (p, k) in [(2u64, 1usize), (3, 1), (2, 2), (3, 2), (2, 3)] {
        let field = Field::new(p, k)?;
        println!(
            "{field}: modulus coefficients (low to high) {:?}",
            field.modulus()
        );
    }
    println!();

    // GF(9) under x^2 + 1: arithmetic on a few elements.
    let gf9 = Field::new(3, 2)?;
    let x = gf9.element(3); // the generator polynomial "x"
    let two = gf9.element(2);
    println!("in {gf9}:");
    println!("  x * x        = {}", x.mul(&x)?);
    println!("  x + 2        = {}", x.add(&two)?);
    println!("  (x + 2)^-1   = {}", x.add(&two)?.inv()?);
    println!(
        "  check: (x+2)(x+2)^-1 = {}",
        x.add(&two)?.mul(&x.add(&two)?.inv()?)?
    );
    println!();

    println!("trace table of {gf9} (values land in GF(3)):");
    for e in gf9.elements() {
        println!("  tr({}) = {}", e, e.trace());
    }
    Ok(())
}
