//! Classical exact integer/rational sequences: Bernoulli numbers, Euler
//! numbers, and Eulerian polynomial coefficients.
//!
//! Everything is computed by exact recurrences over [`Rational`]s; small
//! memo caches sit behind a mutex so the functions stay safe to call from
//! multiple threads.

use crate::rational::{binomial, rat_int, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::sync::Mutex;

static BERNOULLI_CACHE: Lazy<Mutex<Vec<Rational>>> = Lazy::new(|| Mutex::new(Vec::new()));
static EULER_CACHE: Lazy<Mutex<Vec<Rational>>> = Lazy::new(|| Mutex::new(Vec::new()));

/// Bernoulli number `B_n` with the convention `B_1 = -1/2`.
///
/// Defined by the recurrence `sum_{k=0}^{n} C(n+1, k) B_k = 0` for `n >= 1`
/// together with `B_0 = 1`.
pub fn bernoulli(n: u32) -> Rational {
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    while cache.len() <= n as usize {
        let m = cache.len() as u32;
        if m == 0 {
            cache.push(Rational::one());
            continue;
        }
        // B_m = -1/C(m+1, m) * sum_{k<m} C(m+1, k) B_k
        let mut acc = Rational::zero();
        for k in 0..m {
            acc += Rational::from_integer(binomial(m + 1, k)) * &cache[k as usize];
        }
        let b = -acc / Rational::from_integer(BigInt::from(m as i64 + 1));
        cache.push(b);
    }
    cache[n as usize].clone()
}

/// Euler number `E_n`, the coefficients of `sech x = sum E_n x^n / n!`.
///
/// Odd-index values vanish; even ones satisfy the cosh-convolution
/// `sum_{j=0}^{m} C(2m, 2j) E_{2j} = 0` for `m >= 1`.
pub fn euler_number(n: u32) -> Rational {
    if n % 2 == 1 {
        return Rational::zero();
    }
    let mut cache = EULER_CACHE.lock().unwrap(); // cache[j] = E_{2j}
    let idx = (n / 2) as usize;
    while cache.len() <= idx {
        let m = cache.len() as u32;
        if m == 0 {
            cache.push(Rational::one());
            continue;
        }
        let mut acc = Rational::zero();
        for j in 0..m {
            acc += Rational::from_integer(binomial(2 * m, 2 * j)) * &cache[j as usize];
        }
        cache.push(-acc);
    }
    cache[idx].clone()
}

/// Coefficients `[A_{k,0}, .., A_{k,k-1}]` of the `k`-th Eulerian polynomial
/// `P_k(z) = sum_n A_{k,n} z^n`, via
/// `A_{k,n} = sum_i (-1)^i C(k+1, i) (n+1-i)^k`.
///
/// All entries are strictly positive and they sum to `k!`. Errors on `k = 0`:
/// the degree-(-1) polynomial has no coefficient list and the weight-1 factor
/// is handled directly by the series layer.
pub fn eulerian_coefficients(k: u32) -> Result<Vec<BigInt>, String> {
    if k == 0 {
        return Err("eulerian_coefficients: k = 0 has no Eulerian polynomial".into());
    }
    let mut out = Vec::with_capacity(k as usize);
    for n in 0..k {
        let mut acc = BigInt::zero();
        for i in 0..=n {
            let base = BigInt::from((n + 1 - i) as i64);
            let term = binomial(k + 1, i) * base.pow(k);
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// Convenience: `B_{n+1}/(n+1)` shows up all over the omega layer.
pub fn bernoulli_over_index(n: u32) -> Rational {
    bernoulli(n + 1) / rat_int(n as i64 + 1)
}
