//! Numeric evaluation: pinned constants, the averaging identity between
//! congruence-restricted zeta values and root-of-unity polylogarithm values,
//! the Gamma constants, alternating Euler sum identities, and the
//! series-limit route to zeta values.

use num_complex::Complex64;
use qmz::numeric::{gamma_numeric, mpv_numeric, zeta_numeric, zk_limit_check, MzvSymbol};

const PI: f64 = std::f64::consts::PI;

#[test]
fn zeta_pinned_values() {
    // Sum over odd k of k^-2 = pi^2/8.
    let (v, b) = zeta_numeric(2, &[2], &[1], 1_000_000).unwrap();
    assert!((v - PI * PI / 8.0).abs() < 1e-6, "zeta_2(2;1) = {v}, bound {b}");
    // Sum over even k of k^-2 = pi^2/24.
    let (v, _) = zeta_numeric(2, &[2], &[0], 1_000_000).unwrap();
    assert!((v - PI * PI / 24.0).abs() < 1e-6, "zeta_2(2;0) = {v}");
    // Level 1 depth 2: zeta(2,1) = zeta(3).
    let zeta3 = 1.2020569031595942;
    let (v, b) = zeta_numeric(1, &[2, 1], &[0, 0], 10_000).unwrap();
    assert!((v - zeta3).abs() < b + 1e-9, "zeta(2,1) = {v} not within bound {b}");
    let (v, _) = zeta_numeric(1, &[2, 1], &[0, 0], 1_000_000).unwrap();
    assert!((v - zeta3).abs() < 1e-4);
    // Divergent leading exponent is rejected.
    assert!(zeta_numeric(2, &[1, 2], &[1, 0], 100).is_err());
}

#[test]
fn mpv_pinned_values() {
    // L_2(1;1) = sum (-1)^k / k = -ln 2.
    let (v, _) = mpv_numeric(2, &[1], &[1], 1_000_000).unwrap();
    assert!((v - Complex64::new(-(2.0f64.ln()), 0.0)).norm() < 1e-6, "L_2(1;1) = {v}");
    // L_2(2;1) = -pi^2/12.
    let (v, _) = mpv_numeric(2, &[2], &[1], 100_000).unwrap();
    assert!((v - Complex64::new(-PI * PI / 12.0, 0.0)).norm() < 1e-8, "L_2(2;1) = {v}");
    // (s_1, a_1) = (1, 0) diverges.
    assert!(mpv_numeric(3, &[1, 2], &[0, 1], 100).is_err());
    assert!(mpv_numeric(3, &[1, 2], &[3, 1], 100).is_err());
}

/// `zeta_N(s; alpha) = N^{-d} sum over a-vectors of eta^{-a.alpha} L_N(s; a)`.
/// Truncated at a common cutoff both sides agree term-by-term, so the
/// residual is pure floating error.
#[test]
fn averaging_identity() {
    let cutoff = 200_000;
    for level in [2u32, 3, 4] {
        for (s, alpha) in [(vec![2u32], vec![1u32]), (vec![2, 1], vec![1, 0])] {
            let d = s.len();
            let (zeta, _) = zeta_numeric(level, &s, &alpha, cutoff).unwrap();
            let mut avg = Complex64::new(0.0, 0.0);
            let n = level as usize;
            for code in 0..n.pow(d as u32) {
                let a = qmz::reduce::color_vector(level, code, d);
                let dot: u32 = a.iter().zip(&alpha).map(|(x, y)| x * y).sum();
                let t = -2.0 * PI * (dot % level) as f64 / level as f64;
                let phase = Complex64::new(t.cos(), t.sin());
                let (l, _) = mpv_numeric(level, &s, &a, cutoff).unwrap();
                avg += phase * l;
            }
            avg /= (n as f64).powi(d as i32);
            let residual = (avg - Complex64::new(zeta, 0.0)).norm();
            assert!(
                residual < 1e-5,
                "averaging at level {level}, ({s:?};{alpha:?}): residual {residual:.2e}"
            );
        }
    }
}

#[test]
fn gamma_pinned_values() {
    // Gamma_1 at level 2 is -ln 2.
    let (v, _) = gamma_numeric(2, 1, &[], &[], 30_000_000).unwrap();
    assert!((v + 2.0f64.ln()).abs() < 1e-8, "Gamma_1 = {v}");
    // Gamma_0 is identically zero.
    let (v, b) = gamma_numeric(3, 0, &[2], &[1], 10).unwrap();
    assert_eq!((v, b), (0.0, 0.0));
    // Out-of-range beta.
    assert!(gamma_numeric(3, 3, &[], &[], 10).is_err());
}

/// `Gamma_1^2 + 2 Gamma_1(1;1) - 2 Gamma_1(1;0) = zeta(2)`.
#[test]
fn gamma_square_relation() {
    let (g1, _) = gamma_numeric(2, 1, &[], &[], 30_000_000).unwrap();
    let (g10, _) = gamma_numeric(2, 1, &[1], &[0], 20_000_000).unwrap();
    let (g11, _) = gamma_numeric(2, 1, &[1], &[1], 20_000_000).unwrap();
    let lhs = g1 * g1 + 2.0 * g11 - 2.0 * g10;
    let zeta2 = PI * PI / 6.0;
    assert!((lhs - zeta2).abs() < 1e-6, "relation residual {}", (lhs - zeta2).abs());
}

/// Products of convergent zeta values follow the merge-only stuffle (the
/// weight-drop collision terms of the generator algebra die in the weight
/// grading; merged indices require equal colors).
#[test]
fn zeta_products_follow_merge_stuffle() {
    let cutoff = 1_000_000;
    let z = |s: &[u32], a: &[u32]| zeta_numeric(2, s, a, cutoff).unwrap().0;
    // zeta_2(2;1) * zeta_2(3;0) = zeta_2(2,3;1,0) + zeta_2(3,2;0,1): the
    // merge term vanishes because the colors differ.
    let lhs = z(&[2], &[1]) * z(&[3], &[0]);
    let rhs = z(&[2, 3], &[1, 0]) + z(&[3, 2], &[0, 1]);
    assert!((lhs - rhs).abs() < 1e-5, "mixed-color product: {}", (lhs - rhs).abs());
    // zeta_2(2;1)^2 = 2 zeta_2(2,2;1,1) + zeta_2(4;1).
    let lhs = z(&[2], &[1]) * z(&[2], &[1]);
    let rhs = 2.0 * z(&[2, 2], &[1, 1]) + z(&[4], &[1]);
    assert!((lhs - rhs).abs() < 1e-5, "square: {}", (lhs - rhs).abs());
}

/// Alternating Euler sums as level-2 polylogarithm values: bars mark
/// argument positions with sign -1.
#[test]
fn alternating_euler_sum_relations() {
    let cutoff = 1_000_000;
    let e = |s: &[u32], a: &[u32]| mpv_numeric(2, s, a, cutoff).unwrap().0.re;
    // 3 zeta(2bar,1) = zeta(2,1) + zeta(2,1bar) + zeta(2bar,1bar).
    let r1 = 3.0 * e(&[2, 1], &[1, 0])
        - (e(&[2, 1], &[0, 0]) + e(&[2, 1], &[0, 1]) + e(&[2, 1], &[1, 1]));
    assert!(r1.abs() < 1e-4, "first alternating relation: {r1:.2e}");
    // 2 zeta(3,1) = 2 zeta(3bar,1) + zeta(2bar,2) - zeta(2bar,2bar).
    let r2 = 2.0 * e(&[3, 1], &[0, 0])
        - (2.0 * e(&[3, 1], &[1, 0]) + e(&[2, 2], &[1, 0]) - e(&[2, 2], &[1, 1]));
    assert!(r2.abs() < 1e-4, "second alternating relation: {r2:.2e}");
}

/// The limit `(1-q)^w [s;alpha](q eta^{-1})` as `q -> 1` recovers the zeta
/// value (checked through Richardson extrapolation).
#[test]
fn limit_route_recovers_zeta_values() {
    assert!(zk_limit_check(1, 2, 0).unwrap() < 1e-2); // zeta(2)
    assert!(zk_limit_check(1, 3, 0).unwrap() < 1e-2); // zeta(3)
    assert!(zk_limit_check(2, 2, 1).unwrap() < 1e-2); // zeta_2(2;1) = pi^2/8
    assert!(zk_limit_check(2, 1, 1).is_err());
}

#[test]
fn symbol_ordering_and_display() {
    let unit = MzvSymbol::Unit { level: 2 };
    let z = MzvSymbol::Zeta { level: 2, s: vec![2, 1], alpha: vec![0, 1] };
    let g = MzvSymbol::Gamma { level: 2, beta: 1, s: vec![1], alpha: vec![0] };
    assert!(unit < z);
    assert!(z < g, "symbols sort by kind first: zeta before Gamma");
    assert_eq!(format!("{z}"), "zeta_2(2,1;0,1)");
    assert_eq!(format!("{g}"), "Gamma_1(1;0)");
    assert_eq!(z.weight(), 3);
    assert_eq!(g.weight(), 2);
    assert_eq!(unit.value(10).unwrap(), (1.0, 0.0));
}
