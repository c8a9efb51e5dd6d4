//! The expansion coefficients `omega^N_{n;alpha}` of `1/(eta^alpha e^x - 1)`
//! and the `lambda^{j;N}_{a,b;alpha}` structure constants of the
//! polylogarithm product.
//!
//! The generic route is exact power-series inversion over `Q(eta_N)`; the
//! closed formulas for N = 2, 3, 4 are kept as independent validators.

use crate::cyclo::{cyc_normalize, CycloNum};
use crate::rational::{binomial, factorial, rat, rat_int, Rational};
use crate::sequences::{bernoulli, euler_number};
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

/// Memoized table of `omega^N_{n;alpha}` for one `(N, alpha)` pair.
#[derive(Clone, Debug)]
pub struct OmegaTable {
    pub level: u32,
    pub alpha: u32,
    pub values: Vec<CycloNum>, // index n = 0..=n_max
}

static OMEGA_CACHE: Lazy<Mutex<HashMap<(u32, u32), Vec<CycloNum>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// `omega^N_{n;alpha}` for n = 0..=n_max, by exact series inversion.
///
/// For `alpha != 0` we invert `eta^alpha e^x - 1` directly (its constant
/// term `eta^alpha - 1` is a unit of `Q(eta_N)`); for `alpha = 0` the simple
/// pole is removed first by inverting `(e^x - 1)/x` and reading the
/// coefficients one slot up.
pub fn omega(level: u32, alpha: u32, n_max: u32) -> OmegaTable {
    assert!(level >= 1);
    let alpha = alpha % level;
    let mut cache = OMEGA_CACHE.lock().unwrap();
    let values = cache.entry((level, alpha)).or_default();
    if values.len() <= n_max as usize {
        *values = compute_omega(level, alpha, n_max);
    }
    OmegaTable {
        level,
        alpha,
        values: values[..=n_max as usize].to_vec(),
    }
}

fn compute_omega(level: u32, alpha: u32, n_max: u32) -> Vec<CycloNum> {
    let n = n_max as usize;
    // Coefficient vector a[k] of the series to invert, and the order of g.
    let (a, g_len, offset): (Vec<CycloNum>, usize, usize) = if alpha == 0 {
        // (e^x - 1)/x = sum_k x^k/(k+1)!; omega_{n;0} = n! * g_{n+1} where
        // g = x/(e^x - 1).
        let a = (0..=n + 1)
            .map(|k| {
                CycloNum::from_rational(
                    level,
                    rat_int(1) / Rational::from_integer(factorial(k as u32 + 1)),
                )
            })
            .collect();
        (a, n + 2, 1)
    } else {
        // eta^alpha e^x - 1: constant term eta^alpha - 1, higher eta^alpha/k!.
        let ea = CycloNum::eta_pow(level, alpha as i64);
        let mut a = vec![&ea - &CycloNum::one(level)];
        for k in 1..=n {
            a.push(ea.scale(&(rat_int(1) / Rational::from_integer(factorial(k as u32)))));
        }
        (a, n + 1, 0)
    };
    // Series inversion g = 1/a: g_0 = 1/a_0, g_k = -(1/a_0) sum_{i=1..k} a_i g_{k-i}.
    let a0_inv = a[0].inverse().expect("constant term is a unit");
    let mut g: Vec<CycloNum> = Vec::with_capacity(g_len);
    g.push(a0_inv.clone());
    for k in 1..g_len {
        let mut acc = CycloNum::zero(level);
        for i in 1..=k.min(a.len() - 1) {
            acc += &(&a[i] * &g[k - i]);
        }
        g.push(-(&a0_inv * &acc));
    }
    (0..=n)
        .map(|m| g[m + offset].scale(&Rational::from_integer(factorial(m as u32))))
        .collect()
}

/// Closed-form `omega` values for N in {2, 3, 4}, used as validators against
/// the generic inversion. Errors on any (level, alpha) pair without a
/// published formula.
pub fn omega_closed_form(level: u32, alpha: u32, n: u32) -> Result<CycloNum, String> {
    let b_over = |m: u32| bernoulli(m + 1) / rat_int(m as i64 + 1); // B_{m+1}/(m+1)
    match (level, alpha) {
        (2, 1) => {
            // (2^{n+1} - 1) B_{n+1} / (n+1)
            let f = (rat_int(2).pow(n as i32 + 1) - rat_int(1)) * b_over(n);
            Ok(CycloNum::from_rational(2, f))
        }
        (3, 1) | (3, 2) => {
            let base = omega3_alpha1(n)?;
            if alpha == 1 {
                Ok(base)
            } else if n == 0 {
                // The reflection below only holds for n >= 1; at n = 0 the
                // two generating functions sum to -1 instead.
                Ok(-(CycloNum::one(3) + base))
            } else {
                // omega_{n;2} = -(-1)^n omega_{n;1} for n >= 1
                Ok(if n % 2 == 0 { -base } else { base })
            }
        }
        (4, 1) => omega4_alpha1(n),
        (4, 2) => {
            // Same rational value as the level-2 closed form, lifted to N=4.
            let v = omega_closed_form(2, 1, n)?;
            Ok(CycloNum::from_rational(
                4,
                v.as_rational().expect("level-2 omega is rational"),
            ))
        }
        (4, 3) => Ok(omega4_alpha1(n)?.conj()),
        _ => Err(format!(
            "omega_closed_form: no published formula for level {level}, alpha {alpha}"
        )),
    }
}

fn omega3_alpha1(n: u32) -> Result<CycloNum, String> {
    if n == 0 {
        // (eta^2 - 1)/3
        return Ok(cyc_normalize(3, &[rat(-1, 3), Rational::zero(), rat(1, 3)]));
    }
    if n % 2 == 1 {
        // n = 2m-1: (3^{2m} - 1) B_{2m} / (4m)
        let m = (n + 1) / 2;
        let f = (rat_int(3).pow(2 * m as i32) - rat_int(1)) * bernoulli(2 * m)
            / rat_int(4 * m as i64);
        return Ok(CycloNum::from_rational(3, f));
    }
    // n = 2m even, m >= 1:
    // -sqrt(-3)/(6(2m+1)) * sum_{j=0}^{2m} 3^{2m-j} (2^{j+1}-1) C(2m+1, 2m-j) B_{2m-j}
    let mut acc = Rational::zero();
    for j in 0..=n {
        acc += rat_int(3).pow((n - j) as i32)
            * (rat_int(2).pow(j as i32 + 1) - rat_int(1))
            * Rational::from_integer(binomial(n + 1, n - j))
            * bernoulli(n - j);
    }
    let scale = -acc / rat_int(6 * (n as i64 + 1));
    // sqrt(-3) = 1 + 2 eta in Q(eta_3)
    let sqrt_m3 = cyc_normalize(3, &[Rational::one(), rat_int(2)]);
    Ok(sqrt_m3.scale(&scale))
}

fn omega4_alpha1(n: u32) -> Result<CycloNum, String> {
    if n == 0 {
        // (-1 - i)/2
        return Ok(cyc_normalize(4, &[rat(-1, 2), rat(-1, 2)]));
    }
    if n % 2 == 1 {
        // 2^n (2^{n+1} - 1) B_{n+1} / (n+1)
        let f = rat_int(2).pow(n as i32)
            * (rat_int(2).pow(n as i32 + 1) - rat_int(1))
            * bernoulli(n + 1)
            / rat_int(n as i64 + 1);
        return Ok(CycloNum::from_rational(4, f));
    }
    // even n >= 2: -(i/2) E_n
    let i = CycloNum::eta(4);
    Ok(i.scale(&(-euler_number(n) / rat_int(2))))
}

/// Structure constant of the polylogarithm product:
/// `lambda^{j;N}_{a,b;alpha} = (-1)^{b-1} C(a+b-j-1, a-j)
///  omega^N_{a+b-j-1;alpha} / (a+b-j-1)!`, for `1 <= j <= a`.
pub fn lambda(level: u32, j: u32, a: u32, b: u32, alpha: u32) -> Result<CycloNum, String> {
    if j < 1 || j > a || b < 1 {
        return Err(format!("lambda: need 1 <= j <= a and b >= 1, got j={j}, a={a}, b={b}"));
    }
    let m = a + b - j - 1;
    let om = omega(level, alpha % level, m).values[m as usize].clone();
    let mut c = Rational::from_integer(binomial(m, a - j))
        / Rational::from_integer(factorial(m));
    if b % 2 == 0 {
        c = -c;
    }
    Ok(om.scale(&c))
}

/// The color-sum identity `sum_{alpha=1}^{N-1} omega^N_{n;alpha}
///  = (N^{n+1}-1) B_{n+1}/(n+1)` as an exactly checkable right-hand side.
pub fn omega_color_sum_rhs(level: u32, n: u32) -> Rational {
    (rat_int(level as i64).pow(n as i32 + 1) - Rational::one()) * bernoulli(n + 1)
        / rat_int(n as i64 + 1)
}
