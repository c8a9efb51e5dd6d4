//! Truncated q-series over `Q(eta_N)` and the multiple divisor functions.
//!
//! An MDF `[s; alpha]` is built by three independent routes (divisor-sum
//! enumeration, normalized polylogarithms, Eulerian rational functions) whose
//! agreement is itself a correctness check. The module also provides the
//! subalgebra generators `g_beta`, the element `t_N` and the derivation
//! `q d/dq`.

use crate::cyclo::CycloNum;
use crate::poly::euler_phi;
use crate::rational::{factorial, rat_int, Rational};
use crate::sequences::eulerian_coefficients;
use std::fmt;

/// Power series `sum_{n=0}^{order} c_n q^n` with exact cyclotomic
/// coefficients. Ring operations truncate to the minimum of the operand
/// orders; the order is recorded and never silently extended.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    level: u32,
    order: usize,
    coeffs: Vec<CycloNum>, // length order + 1
}

impl QSeries {
    pub fn zero(level: u32, order: usize) -> Self {
        QSeries {
            level,
            order,
            coeffs: vec![CycloNum::zero(level); order + 1],
        }
    }

    pub fn one(level: u32, order: usize) -> Self {
        let mut s = Self::zero(level, order);
        s.coeffs[0] = CycloNum::one(level);
        s
    }

    pub fn constant(level: u32, order: usize, c: CycloNum) -> Self {
        let mut s = Self::zero(level, order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(level: u32, coeffs: Vec<CycloNum>) -> Self {
        assert!(!coeffs.is_empty());
        QSeries {
            level,
            order: coeffs.len() - 1,
            coeffs,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> &CycloNum {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[CycloNum] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_level(&self, other: &Self) {
        assert_eq!(
            self.level, other.level,
            "mixed-level q-series arithmetic"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_level(other);
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] + &other.coeffs[n])
            .collect();
        QSeries { level: self.level, order, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_level(other);
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|n| &self.coeffs[n] - &other.coeffs[n])
            .collect();
        QSeries { level: self.level, order, coeffs }
    }

    pub fn neg(&self) -> Self {
        QSeries {
            level: self.level,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &CycloNum) -> Self {
        QSeries {
            level: self.level,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn scale_rat(&self, k: &Rational) -> Self {
        QSeries {
            level: self.level,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_level(other);
        let order = self.order.min(other.order);
        let zero = CycloNum::zero(self.level);
        let mut coeffs = vec![zero; order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        QSeries { level: self.level, order, coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QSeries::one(self.level, self.order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Restrict to a smaller truncation window.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot extend a truncated series");
        QSeries {
            level: self.level,
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "level": self.level,
            "order": self.order,
            "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = if c.is_rational() && euler_phi(self.level) >= 1 {
                format!("{c}")
            } else {
                format!("({c})")
            };
            let part = match n {
                0 => coeff,
                1 if coeff == "1" => "q".into(),
                1 => format!("{coeff}·q"),
                _ if coeff == "1" => format!("q^{n}"),
                _ => format!("{coeff}·q^{n}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            write!(f, "0 + O(q^{})", self.order + 1)
        } else {
            write!(f, "{} + O(q^{})", parts.join(" + "), self.order + 1)
        }
    }
}

/// Index `(s; alpha)` of an MDF at a given level: exponents `s_j >= 1` and
/// colors `0 <= alpha_j < N`, of common length `d >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MdfIndex {
    pub level: u32,
    pub s: Vec<u32>,
    pub alpha: Vec<u32>,
}

impl MdfIndex {
    pub fn new(level: u32, s: Vec<u32>, alpha: Vec<u32>) -> Result<Self, String> {
        if level < 1 {
            return Err("level must be >= 1".into());
        }
        if s.is_empty() || s.len() != alpha.len() {
            return Err(format!(
                "index arity mismatch: {} exponents vs {} colors",
                s.len(),
                alpha.len()
            ));
        }
        if s.iter().any(|&x| x < 1) {
            return Err("exponents must be >= 1".into());
        }
        if alpha.iter().any(|&a| a >= level) {
            return Err(format!("colors must lie in 0..{level}"));
        }
        Ok(MdfIndex { level, s, alpha })
    }

    pub fn weight(&self) -> u32 {
        self.s.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.s.len()
    }
}

impl fmt::Display for MdfIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.s.iter().map(|x| x.to_string()).collect();
        let a: Vec<String> = self.alpha.iter().map(|x| x.to_string()).collect();
        write!(f, "[{};{}]@{}", s.join(","), a.join(","), self.level)
    }
}

/// Truncated normalized polylogarithm `tLi_s(eta^alpha q^m)` for `s >= 1`,
/// defined for `m >= 1` by the power sum
/// `sum_{v>=1} v^{s-1} eta^{alpha v} q^{m v} / (s-1)!`.
///
/// For `s = 1` the rational-function form `z/(1-z)` extends the definition to
/// `m <= 0` (needed by the literal `g_beta` boundary terms): at `m = 0` it is
/// the constant `eta^alpha/(1 - eta^alpha)` (requires `alpha` nonzero mod N),
/// and for `m < 0` the expansion around `q = 0` is
/// `-1 - sum_{v>=1} eta^{-alpha v} q^{|m| v}`.
pub fn tli(level: u32, s: u32, alpha: u32, m: i64, order: usize) -> QSeries {
    assert!(s >= 1);
    let mut out = QSeries::zero(level, order);
    if m >= 1 {
        let fact = Rational::from_integer(factorial(s - 1));
        let mut v: i64 = 1;
        while (m * v) as usize <= order {
            let c = rat_int(v).pow((s - 1) as i32) / &fact;
            out.coeffs[(m * v) as usize] =
                CycloNum::eta_pow(level, alpha as i64 * v).scale(&c);
            v += 1;
        }
        return out;
    }
    assert!(
        s == 1,
        "tLi_s at a nonpositive q-power only arises for s = 1"
    );
    if m == 0 {
        let z = CycloNum::eta_pow(level, alpha as i64);
        assert!(
            alpha % level != 0,
            "tLi_1(1) diverges: color must be nonzero mod N"
        );
        let c = z
            .clone()
            .div(&(CycloNum::one(level) - &z))
            .expect("1 - eta^alpha is nonzero for alpha nonzero mod N");
        return QSeries::constant(level, order, c);
    }
    // m < 0: z/(1-z) = -1 - 1/z - 1/z^2 - ...
    out.coeffs[0] = CycloNum::from_int(level, -1);
    let step = (-m) as usize;
    let mut v: i64 = 1;
    while step * v as usize <= order {
        out.coeffs[step * v as usize] =
            -CycloNum::eta_pow(level, -(alpha as i64) * v);
        v += 1;
    }
    out
}

/// MDF by exhaustive enumeration of the defining divisor sums: the `q^n`
/// coefficient is `sigma^alpha_{s-1}(n) / prod (s_j - 1)!`, summing
/// `eta^{sum alpha_j v_j} prod v_j^{s_j - 1}` over all decompositions
/// `n = u_1 v_1 + .. + u_d v_d` with `u_1 > .. > u_d > 0`.
pub fn mdf_divisor_sum(idx: &MdfIndex, order: usize) -> QSeries {
    assert!(order >= 1);
    let level = idx.level;
    let mut out = QSeries::zero(level, order);

    // Recursive enumeration over positions j = 0..d, tracking the remaining
    // budget and the strict upper bound for the next u.
    fn recurse(
        idx: &MdfIndex,
        j: usize,
        remaining: usize,
        u_bound: usize,
        eta_exp: i64,
        v_prod: Rational,
        total: usize,
        out: &mut QSeries,
    ) {
        let d = idx.depth();
        if j == d {
            if remaining == 0 {
                let c = CycloNum::eta_pow(idx.level, eta_exp).scale(&v_prod);
                out.coeffs[total] += &c;
            }
            return;
        }
        // u_j needs to leave room for u_{j+1} > .. > u_d > 0, i.e. at least
        // u_j - 1 >= d - 1 - j, and u_j v_j <= remaining - (minimum cost of
        // the tail, which is at least sum of smaller u's each with v = 1).
        let tail_min: usize = (1..d - j).sum(); // cheapest tail uses u = d-1-j, .., 1
        let u_min = d - j; // u_j must exceed d - 1 - j later entries
        for u in u_min..u_bound {
            if u > remaining {
                break;
            }
            let mut v = 1usize;
            while u * v + tail_min <= remaining {
                recurse(
                    idx,
                    j + 1,
                    remaining - u * v,
                    u,
                    eta_exp + idx.alpha[j] as i64 * v as i64,
                    &v_prod * rat_int(v as i64).pow(idx.s[j] as i32 - 1),
                    total,
                    out,
                );
                v += 1;
            }
        }
    }

    for n in 1..=order {
        recurse(idx, 0, n, n + 1, 0, Rational::from_integer(1.into()), n, &mut out);
    }
    let norm: Rational = idx
        .s
        .iter()
        .map(|&sj| Rational::from_integer(factorial(sj - 1)))
        .product();
    out.scale_rat(&(rat_int(1) / norm))
}

/// Shared chain-summation driver: computes
/// `sum_{n_1 > .. > n_d > 0, n_1 <= order} prod_j factor(j, n_j)`
/// by dynamic programming with prefix sums.
fn chain_sum(
    level: u32,
    d: usize,
    order: usize,
    factor: &dyn Fn(usize, usize) -> QSeries,
) -> QSeries {
    // g[m] = sum over chains with n_j < m of the tail product for levels j..d.
    // Iterate from the innermost letter outward.
    let mut tail: Vec<QSeries> = (0..=order + 1)
        .map(|_| QSeries::one(level, order))
        .collect();
    for j in (0..d).rev() {
        // h(n) = factor(j, n) * tail_sum(n); then prefix-sum into new tail.
        let mut new_tail = vec![QSeries::zero(level, order); order + 2];
        for n in 1..=order {
            let h = factor(j, n).mul(&tail[n]);
            new_tail[n + 1] = new_tail[n].add(&h);
        }
        // positions above `order` keep the last value
        tail = new_tail;
    }
    tail[order + 1].clone()
}

/// MDF via the nested normalized-polylogarithm representation
/// `[s; alpha] = sum_{n_1 > .. > n_d > 0} prod_j tLi_{s_j}(eta^{alpha_j} q^{n_j})`.
pub fn mdf_polylog(idx: &MdfIndex, order: usize) -> QSeries {
    assert!(order >= 1);
    chain_sum(idx.level, idx.depth(), order, &|j, n| {
        tli(idx.level, idx.s[j], idx.alpha[j], n as i64, order)
    })
}

/// The single polylogarithm factor expanded through the Eulerian rational
/// function `z P_{k}(z) / (k! (1-z)^{k+1})` with `k = s - 1` and
/// `z = eta^alpha q^n`; the weight-1 factor is `z/(1-z)` directly.
fn eulerian_factor(level: u32, s: u32, alpha: u32, n: usize, order: usize) -> QSeries {
    let eta_a = CycloNum::eta_pow(level, alpha as i64);
    // 1/(1-z)^s = sum_k C(k+s-1, s-1) z^k, z = eta^alpha q^n
    let mut inv_pow = QSeries::zero(level, order);
    let mut k = 0usize;
    while n * k <= order {
        let c = Rational::from_integer(crate::rational::binomial(
            k as u32 + s - 1,
            s - 1,
        ));
        inv_pow.coeffs[n * k] = CycloNum::eta_pow(level, alpha as i64 * k as i64).scale(&c);
        k += 1;
    }
    // z * P_{s-1}(z), with P_0 = 1 for the weight-1 case.
    let mut zp = QSeries::zero(level, order);
    if s == 1 {
        if n <= order {
            zp.coeffs[n] = eta_a;
        }
    } else {
        let a = eulerian_coefficients(s - 1).expect("s >= 2 here");
        for (i, ai) in a.iter().enumerate() {
            let e = n * (i + 1);
            if e <= order {
                zp.coeffs[e] = CycloNum::eta_pow(level, alpha as i64 * (i as i64 + 1))
                    .scale(&Rational::from_integer(ai.clone()));
            }
        }
    }
    let fact = Rational::from_integer(factorial(s - 1));
    zp.mul(&inv_pow).scale_rat(&(rat_int(1) / fact))
}

/// MDF via Eulerian polynomials: each polylogarithm factor is replaced by its
/// closed rational-function form before expansion.
pub fn mdf_eulerian(idx: &MdfIndex, order: usize) -> QSeries {
    assert!(order >= 1);
    chain_sum(idx.level, idx.depth(), order, &|j, n| {
        eulerian_factor(idx.level, idx.s[j], idx.alpha[j], n, order)
    })
}

/// The subalgebra generator `g_beta(s; alpha) = [1,s;0,alpha] - [1,s;beta,alpha]`,
/// computed by the shifted two-case formulas (the authoritative definition):
///
/// * `beta < alpha_1` (or empty index): leading factor
///   `tLi_1(q^n) - tLi_1(eta^beta q^{n+beta})`, minus the boundary sum over
///   `l = 1..beta` of `tLi_1(eta^beta q^{n_1+l})` times the tail product;
/// * `beta >= alpha_1` (nonempty): leading factor
///   `tLi_1(q^n) - tLi_1(eta^beta q^{n+beta-N})`, plus the boundary sum over
///   `l = beta+1..N` of `tLi_1(eta^beta q^{n_1-N+l})` times the tail.
///
/// Boundary terms with nonpositive q-shift use the rational-function
/// expansion of `tLi_1` (see [`tli`]); for the empty index `n_1 = 0`.
pub fn g_beta(level: u32, beta: u32, s: &[u32], alpha: &[u32], order: usize) -> Result<QSeries, String> {
    if beta == 0 || beta >= level {
        return Err(format!("g_beta: beta must satisfy 1 <= beta < N, got {beta}"));
    }
    assert_eq!(s.len(), alpha.len());
    assert!(order >= 1);
    let d = s.len();
    let n_max = order;

    let first_case = d == 0 || beta < alpha[0];

    // Inner chains n_1 > .. > n_d with their tail products, tracked as
    // tail[m] = sum over chains with n_1 = m (m = 0 encodes the empty chain).
    // Build by one chain_sum-like pass that exposes the top index.
    let mut by_top: Vec<QSeries> = vec![QSeries::zero(level, order); n_max + 1];
    if d == 0 {
        by_top[0] = QSeries::one(level, order);
    } else {
        // tail_sum[m] = sum over chains n_2 > .. > n_d < m of the product.
        let mut tail: Vec<QSeries> = vec![QSeries::one(level, order); n_max + 2];
        for j in (1..d).rev() {
            let mut new_tail = vec![QSeries::zero(level, order); n_max + 2];
            for n in 1..=n_max {
                let h = tli(level, s[j], alpha[j], n as i64, order).mul(&tail[n]);
                new_tail[n + 1] = new_tail[n].add(&h);
            }
            tail = new_tail;
        }
        for m in 1..=n_max {
            by_top[m] = tli(level, s[0], alpha[0], m as i64, order).mul(&tail[m]);
        }
    }

    let mut acc = QSeries::zero(level, order);
    for (n1, inner) in by_top.iter().enumerate() {
        if inner.is_zero() {
            continue;
        }
        // Leading sum over n > n_1. The range extends `N` past the
        // truncation order because in the second case the shifted argument
        // `q^{n+beta-N}` still lands inside the window for n slightly above it.
        let mut lead = QSeries::zero(level, order);
        for n in n1 + 1..=n_max + level as usize {
            let shift = if first_case {
                n as i64 + beta as i64
            } else {
                n as i64 + beta as i64 - level as i64
            };
            lead = lead
                .add(&tli(level, 1, 0, n as i64, order))
                .sub(&tli(level, 1, beta, shift, order));
        }
        // Boundary sum.
        let mut boundary = QSeries::zero(level, order);
        if first_case {
            for l in 1..=beta as i64 {
                boundary = boundary.add(&tli(level, 1, beta, n1 as i64 + l, order));
            }
            acc = acc.add(&lead.sub(&boundary).mul(inner));
        } else {
            for l in beta as i64 + 1..=level as i64 {
                boundary = boundary.add(&tli(level, 1, beta, n1 as i64 - level as i64 + l, order));
            }
            acc = acc.add(&lead.add(&boundary).mul(inner));
        }
    }
    Ok(acc)
}

/// Independent oracle for `g_beta`: the naive difference of the two MDFs.
pub fn g_beta_naive(level: u32, beta: u32, s: &[u32], alpha: &[u32], order: usize) -> Result<QSeries, String> {
    if beta == 0 || beta >= level {
        return Err(format!("g_beta: beta must satisfy 1 <= beta < N, got {beta}"));
    }
    let mut s1 = vec![1u32];
    s1.extend_from_slice(s);
    let mut a0 = vec![0u32];
    a0.extend_from_slice(alpha);
    let mut ab = vec![beta];
    ab.extend_from_slice(alpha);
    let i0 = MdfIndex::new(level, s1.clone(), a0)?;
    let ib = MdfIndex::new(level, s1, ab)?;
    Ok(mdf_polylog(&i0, order).sub(&mdf_polylog(&ib, order)))
}

/// `t_N = sum_{alpha} [1; alpha] = N sum_{n>=1} d(n) q^{N n}`, the element
/// transcendental over the `g_beta`/convergent-index subalgebra.
pub fn t_series(level: u32, order: usize) -> QSeries {
    assert!(order >= 1);
    let mut out = QSeries::zero(level, order);
    let n_step = level as usize;
    let mut n = 1usize;
    while n * n_step <= order {
        let divisors = (1..=n).filter(|d| n % d == 0).count() as i64;
        out.coeffs[n * n_step] = CycloNum::from_int(level, divisors * level as i64);
        n += 1;
    }
    out
}

/// The derivation `q d/dq`: multiplies the `q^n` coefficient by `n`.
pub fn q_derive(f: &QSeries) -> QSeries {
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| c.scale(&rat_int(n as i64)))
        .collect();
    QSeries {
        level: f.level,
        order: f.order,
        coeffs,
    }
}
