//! Arbitrary-precision rational numbers and small combinatorial helpers.
//!
//! `Rational` is `num_rational::BigRational`: always in lowest terms with a
//! positive denominator, exact under all ring operations.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Shorthand constructor from machine integers. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    acc
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// Renders as `"num"` when the denominator is 1, otherwise `"num/den"`.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the output of [`rational_to_string`] (and any `"p/q"` form).
pub fn rational_from_str(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let d: BigInt = den.parse().map_err(|e| format!("bad denominator {den:?}: {e}"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rational::new(n, d))
}

/// Nearest f64 (numerator/denominator in floating point; fine for the sizes
/// that reach the numeric layer).
pub fn rational_to_f64(r: &Rational) -> f64 {
    // Avoid overflow for huge integers by going through a scaled division.
    let n = r.numer();
    let d = r.denom();
    match (n.to_string().parse::<f64>(), d.to_string().parse::<f64>()) {
        (Ok(nf), Ok(df)) if nf.is_finite() && df.is_finite() && df != 0.0 => nf / df,
        _ => {
            // Fall back: shift both by a common power of two until they fit.
            let mut n = n.clone();
            let mut d = d.clone();
            while n.abs().bits() > 900 || d.bits() > 900 {
                n >>= 64;
                d >>= 64;
            }
            let nf: f64 = n.to_string().parse().unwrap_or(0.0);
            let df: f64 = d.to_string().parse().unwrap_or(1.0);
            nf / df
        }
    }
}
