//! Numeric multiple zeta values at level N: congruence-restricted nested
//! sums with explicit tail bounds, polylogarithm values at roots of unity,
//! the averaging identity connecting the two, and the recovery of zeta
//! values as q -> 1 limits of the divisor functions.
//!
//! Run with: cargo run --example numeric_zeta

use num_complex::Complex64;
use qmz::numeric::{mpv_numeric, zeta_numeric, zk_limit_check};

fn main() {
    let pi = std::f64::consts::PI;

    // Sum over odd k of 1/k^2 = pi^2/8.
    let (v, bound) = zeta_numeric(2, &[2], &[1], 1_000_000).unwrap();
    println!("zeta_2(2;1) = {v:.12} (pi^2/8 = {:.12}, bound {bound:.1e})", pi * pi / 8.0);

    // A depth-2 value at level 2.
    let (v, bound) = zeta_numeric(2, &[2, 1], &[0, 1], 1_000_000).unwrap();
    println!("zeta_2(2,1;0,1) = {v:.12} (bound {bound:.1e})");

    // Alternating sums are level-2 polylogarithm values: L_2(1;1) = -ln 2.
    let (v, _) = mpv_numeric(2, &[1], &[1], 1_000_000).unwrap();
    println!("L_2(1;1) = {v:.12}");
    assert!((v - Complex64::new(-(2.0f64.ln()), 0.0)).norm() < 1e-5);

    // The q -> 1 limit of (1-q)^s [s;alpha](q eta^-1) recovers the zeta
    // value; zk_limit_check returns the extrapolation error.
    for (level, s, alpha, label) in [
        (1, 2, 0, "zeta(2)"),
        (1, 3, 0, "zeta(3)"),
        (2, 2, 1, "zeta_2(2;1)"),
    ] {
        let err = zk_limit_check(level, s, alpha).unwrap();
        println!("limit route for {label}: extrapolation error {err:.2e}");
        assert!(err < 1e-2);
    }
}
