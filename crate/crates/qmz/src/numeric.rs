//! Floating-point evaluation of multiple zeta values at level `N`, multiple
//! polylogarithm values, and the `Gamma_beta` constants, with rough but
//! conservative tail bounds. All sums use compensated (Kahan) accumulation
//! at double precision.

use crate::cyclo::CycloNum;
use num_complex::Complex64;
use std::fmt;

/// Reads the `QMZ_PRECISION` environment variable (binary digits of working
/// precision). The engine computes in IEEE doubles, so at least 53 bits are
/// required; the default is 53.
pub fn precision_from_env() -> Result<u32, String> {
    match std::env::var("QMZ_PRECISION") {
        Err(_) => Ok(53),
        Ok(v) => {
            let p: u32 = v
                .trim()
                .parse()
                .map_err(|_| format!("QMZ_PRECISION must be a positive integer, got {v:?}"))?;
            if p < 53 {
                Err(format!("QMZ_PRECISION must be at least 53, got {p}"))
            } else {
                Ok(p)
            }
        }
    }
}

/// Compensated accumulator.
#[derive(Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// A numerically evaluable symbol: the unit, a convergent multiple zeta
/// value at level `N` (summation indices congruent to the colors mod `N`),
/// or a `Gamma_beta` constant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MzvSymbol {
    Unit {
        level: u32,
    },
    Zeta {
        level: u32,
        s: Vec<u32>,
        alpha: Vec<u32>,
    },
    Gamma {
        level: u32,
        beta: u32,
        s: Vec<u32>,
        alpha: Vec<u32>,
    },
}

impl MzvSymbol {
    pub fn level(&self) -> u32 {
        match self {
            MzvSymbol::Unit { level }
            | MzvSymbol::Zeta { level, .. }
            | MzvSymbol::Gamma { level, .. } => *level,
        }
    }

    pub fn weight(&self) -> u32 {
        match self {
            MzvSymbol::Unit { .. } => 0,
            MzvSymbol::Zeta { s, .. } => s.iter().sum(),
            MzvSymbol::Gamma { s, .. } => 1 + s.iter().sum::<u32>(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            MzvSymbol::Unit { .. } => 0,
            MzvSymbol::Zeta { s, .. } | MzvSymbol::Gamma { s, .. } => s.len(),
        }
    }

    fn sort_key(&self) -> (u8, u32, usize, Vec<u32>, Vec<u32>, u32) {
        match self {
            MzvSymbol::Unit { .. } => (0, 0, 0, vec![], vec![], 0),
            MzvSymbol::Zeta { s, alpha, .. } => {
                (1, self.weight(), s.len(), s.clone(), alpha.clone(), 0)
            }
            MzvSymbol::Gamma { beta, s, alpha, .. } => {
                (2, self.weight(), s.len(), s.clone(), alpha.clone(), *beta)
            }
        }
    }

    /// Numeric value with an error bound, at the given summation cutoff.
    pub fn value(&self, cutoff: u64) -> Result<(f64, f64), String> {
        match self {
            MzvSymbol::Unit { .. } => Ok((1.0, 0.0)),
            MzvSymbol::Zeta { level, s, alpha } => zeta_numeric(*level, s, alpha, cutoff),
            MzvSymbol::Gamma {
                level,
                beta,
                s,
                alpha,
            } => gamma_numeric(*level, *beta, s, alpha, cutoff),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            MzvSymbol::Unit { .. } => serde_json::json!({"kind": "one"}),
            MzvSymbol::Zeta { s, alpha, .. } => {
                serde_json::json!({"kind": "zeta", "s": s, "alpha": alpha})
            }
            MzvSymbol::Gamma { beta, s, alpha, .. } => {
                serde_json::json!({"kind": "gamma", "beta": beta, "s": s, "alpha": alpha})
            }
        }
    }
}

impl PartialOrd for MzvSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MzvSymbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for MzvSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            MzvSymbol::Unit { .. } => write!(f, "1"),
            MzvSymbol::Zeta { level, s, alpha } => {
                write!(f, "zeta_{level}({};{})", join(s), join(alpha))
            }
            MzvSymbol::Gamma { beta, s, alpha, .. } => {
                write!(f, "Gamma_{beta}({};{})", join(s), join(alpha))
            }
        }
    }
}

/// `zeta_N(s; alpha) = sum over k_1 > .. > k_d > 0, k_j = alpha_j (mod N)`
/// of `prod k_j^{-s_j}`. Requires `s_1 >= 2`. Computed in one ascending pass
/// over `k <= cutoff` with nested partial sums; the error bound is the
/// integral tail estimate on the outermost index.
pub fn zeta_numeric(level: u32, s: &[u32], alpha: &[u32], cutoff: u64) -> Result<(f64, f64), String> {
    if s.is_empty() || s.len() != alpha.len() {
        return Err("index arity mismatch".to_string());
    }
    if s[0] < 2 {
        return Err(format!(
            "zeta_{level}({s:?};{alpha:?}) diverges: leading exponent must be at least 2"
        ));
    }
    let d = s.len();
    // inner[j] = sum over k_j > .. > k_d down to 1, all <= current k.
    let mut inner = vec![Kahan::default(); d + 1];
    inner[d].add(1.0);
    for k in 1..=cutoff {
        let mut delta = vec![0.0f64; d];
        for j in 0..d {
            if k % level as u64 == alpha[j] as u64 % level as u64 {
                delta[j] = (k as f64).powi(-(s[j] as i32)) * inner[j + 1].value();
            }
        }
        for j in 0..d {
            inner[j].add(delta[j]);
        }
    }
    // Tail: sum_{k > cutoff, k = alpha_1} k^{-s_1} * (inner part <= inner[1] full sum).
    let tail = (cutoff as f64).powi(1 - s[0] as i32) / (s[0] as f64 - 1.0);
    // The inner part keeps growing (at most logarithmically) past the
    // cutoff; the extra 2/(s_1 - 1) absorbs that growth.
    let inner1 = if d >= 2 {
        inner[1].value().abs().max(1.0) + 2.0 / (s[0] as f64 - 1.0)
    } else {
        1.0
    };
    Ok((inner[0].value(), tail * inner1))
}

/// Multiple polylogarithm value at level `N`:
/// `L_N(s; a) = sum over k_1 > .. > k_d > 0 of prod eta^{a_j k_j} k_j^{-s_j}`.
/// Divergent iff `(s_1, a_1) = (1, 0 mod N)`.
pub fn mpv_numeric(
    level: u32,
    s: &[u32],
    a: &[u32],
    cutoff: u64,
) -> Result<(Complex64, f64), String> {
    if s.is_empty() || s.len() != a.len() {
        return Err("index arity mismatch".to_string());
    }
    if s[0] == 1 && a[0] % level == 0 {
        return Err(format!(
            "L_{level}({s:?};{a:?}) diverges: (s_1, a_1) = (1, 0)"
        ));
    }
    let d = s.len();
    let eta = |e: u64| {
        let t = 2.0 * std::f64::consts::PI * (e % level as u64) as f64 / level as f64;
        Complex64::new(t.cos(), t.sin())
    };
    let mut inner = vec![Complex64::new(0.0, 0.0); d + 1];
    inner[d] = Complex64::new(1.0, 0.0);
    for k in 1..=cutoff {
        let mut delta = vec![Complex64::new(0.0, 0.0); d];
        for j in 0..d {
            let w = eta(a[j] as u64 * k) * (k as f64).powi(-(s[j] as i32));
            delta[j] = w * inner[j + 1];
        }
        for j in 0..d {
            inner[j] += delta[j];
        }
    }
    let sup = inner[1..].iter().map(|z| z.norm().max(1.0)).fold(1.0f64, f64::max);
    let tail = if s[0] >= 2 {
        (cutoff as f64).powi(1 - s[0] as i32) / (s[0] as f64 - 1.0)
    } else {
        // Abel summation bound for the oscillating outer sum.
        let phase = eta(a[0] as u64);
        2.0 / (Complex64::new(1.0, 0.0) - phase).norm() / cutoff as f64
    };
    Ok((inner[0], tail * sup))
}

/// `Gamma_beta(s; alpha)` for `1 <= beta < N`: the convergent difference
/// series with outer index `n_0 = 0 (mod N)`, `n_0 > n_1`, weighted by
/// `1/n_0 - 1/(n_0 + beta)` when `beta <= alpha_1` (shifted by `-N` in the
/// denominator otherwise), times the usual nested chain on `(s; alpha)`.
/// The empty index gives `-1/beta + sum_n (1/(nN) - 1/(beta + nN))`.
/// `Gamma_0` is zero by definition.
pub fn gamma_numeric(
    level: u32,
    beta: u32,
    s: &[u32],
    alpha: &[u32],
    cutoff: u64,
) -> Result<(f64, f64), String> {
    if beta == 0 {
        return Ok((0.0, 0.0));
    }
    if beta >= level {
        return Err(format!("beta must lie in 0..{level}, got {beta}"));
    }
    if s.len() != alpha.len() {
        return Err("index arity mismatch".to_string());
    }
    let n = level as u64;
    if s.is_empty() {
        let mut acc = Kahan::default();
        acc.add(-1.0 / beta as f64);
        for m in 1..=cutoff {
            acc.add(1.0 / (m * n) as f64 - 1.0 / (beta as u64 + m * n) as f64);
        }
        let tail = beta as f64 / (n as f64 * n as f64 * cutoff as f64);
        return Ok((acc.value(), tail));
    }
    let d = s.len();
    // Pairing the class-0 and class-beta outer indices by rank above n_1
    // (the common-cutoff limit of the divergent difference): the partner of
    // n_0 is n_0 + beta when beta <= alpha_1, and n_0 + beta - N otherwise.
    let shift = if beta <= alpha[0] % level {
        beta as f64
    } else {
        beta as f64 - level as f64
    };
    // Position 0 carries residue 0 and weight 1/k - 1/(k + shift); positions
    // 1..=d carry residue alpha_j and weight k^{-s_j}.
    let mut inner = vec![Kahan::default(); d + 2];
    inner[d + 1].add(1.0);
    for k in 1..=cutoff {
        let mut delta = vec![0.0f64; d + 1];
        if k % n == 0 {
            delta[0] = (1.0 / k as f64 - 1.0 / (k as f64 + shift)) * inner[1].value();
        }
        for j in 1..=d {
            if k % n == alpha[j - 1] as u64 % n {
                delta[j] = (k as f64).powi(-(s[j - 1] as i32)) * inner[j + 1].value();
            }
        }
        for j in 0..=d {
            inner[j].add(delta[j]);
        }
    }
    let sup = inner[1].value().abs().max(1.0);
    let tail = shift.abs() / cutoff as f64 * sup;
    Ok((inner[0].value(), tail))
}

/// Embeds a cyclotomic coefficient for numeric work.
pub fn cyclo_to_complex(c: &CycloNum) -> Complex64 {
    let (re, im) = c.embed(53);
    Complex64::new(re, im)
}

/// Evaluates a depth-one generator `[s; alpha]` as the Lambert-type sum
/// `1/(s-1)! sum_v eta^{alpha v} v^{s-1} x^v / (1 - x^v)` at a complex
/// point `|x| < 1`.
pub fn depth_one_series_at(level: u32, s: u32, alpha: u32, x: Complex64) -> Complex64 {
    let eta = |e: u64| {
        let t = 2.0 * std::f64::consts::PI * (e % level as u64) as f64 / level as f64;
        Complex64::new(t.cos(), t.sin())
    };
    let fact: f64 = (1..s.max(1)).map(|k| k as f64).product();
    let r = x.norm();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut xv = Complex64::new(1.0, 0.0);
    let mut v: u64 = 0;
    loop {
        v += 1;
        xv *= x;
        let term = eta(alpha as u64 * v) * (v as f64).powi(s as i32 - 1) * xv
            / (Complex64::new(1.0, 0.0) - xv);
        acc += term;
        // Terms decay like v^{s-1} r^v; stop once the geometric envelope is
        // negligible against the accumulated value.
        if (v as f64).powi(s as i32) * r.powi(v as i32) / (1.0 - r) < 1e-16 * (1.0 + acc.norm()) {
            break;
        }
    }
    acc / fact
}

/// The limit evaluation `lim_{q->1^-} (1-q)^w [s;alpha](q eta^{-1})` for a
/// depth-one index, by Richardson extrapolation over `q = 1 - 2^{-j}`,
/// `j = 4..12`. Returns the absolute difference from the directly summed
/// `zeta_N(s; alpha)`.
pub fn zk_limit_check(level: u32, s: u32, alpha: u32) -> Result<f64, String> {
    if s < 2 {
        return Err("leading exponent must be at least 2".to_string());
    }
    let eta_inv = {
        let t = -2.0 * std::f64::consts::PI / level as f64;
        Complex64::new(t.cos(), t.sin())
    };
    let js: Vec<i32> = (4..=12).collect();
    let mut column: Vec<Complex64> = js
        .iter()
        .map(|&j| {
            let h = 2.0f64.powi(-j);
            let q = 1.0 - h;
            let x = eta_inv * q;
            depth_one_series_at(level, s, alpha, x) * h.powi(s as i32)
        })
        .collect();
    // Richardson in the step h (halved between rows): four sweeps.
    for m in 1..=4 {
        let f = 2.0f64.powi(m);
        let mut next = Vec::with_capacity(column.len() - 1);
        for i in 0..column.len() - 1 {
            next.push((column[i + 1] * f - column[i]) / (f - 1.0));
        }
        column = next;
    }
    let approx = column[column.len() - 1];
    let (direct, _) = zeta_numeric(level, &[s], &[alpha], 2_000_000)?;
    Ok((approx - Complex64::new(direct, 0.0)).norm())
}
