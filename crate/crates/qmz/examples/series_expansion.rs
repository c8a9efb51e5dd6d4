//! q-expansions of multiple divisor functions at level N by three
//! independent constructions: the double divisor sum, nested polylogarithm
//! chains at a root of unity, and the Eulerian-polynomial form.
//!
//! Run with: cargo run --example series_expansion

use qmz::qseries::{mdf_divisor_sum, mdf_eulerian, mdf_polylog, MdfIndex};

fn main() {
    // Depth 1, level 2, odd congruence class: [2;1]@2.
    let idx = MdfIndex::new(2, vec![2], vec![1]).unwrap();
    let series = mdf_divisor_sum(&idx, 8);
    println!("{idx} = {series}");

    // The two alternative constructions give the same exact coefficients.
    assert_eq!(series, mdf_polylog(&idx, 8));
    assert_eq!(series, mdf_eulerian(&idx, 8));

    // Depth 2 with mixed colors: [2,1;0,1]@2.
    let idx = MdfIndex::new(2, vec![2, 1], vec![0, 1]).unwrap();
    let series = mdf_divisor_sum(&idx, 11);
    println!("{idx} = {series}");
    assert_eq!(series, mdf_polylog(&idx, 11));
    assert_eq!(series, mdf_eulerian(&idx, 11));

    // At level 3 the coefficients live in Q(eta_3) and are printed in the
    // power basis 1, eta.
    let idx = MdfIndex::new(3, vec![2], vec![1]).unwrap();
    println!("{idx} = {}", mdf_divisor_sum(&idx, 6));
}
