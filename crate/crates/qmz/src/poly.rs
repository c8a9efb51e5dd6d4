//! Dense univariate polynomials with rational coefficients, plus the
//! cyclotomic polynomials `Phi_N` computed by exact division.

use crate::rational::Rational;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

/// Polynomial stored by ascending degree; the zero polynomial is the empty
/// coefficient vector, otherwise the leading coefficient is nonzero.
///
/// Carries `Phi_N` (integer coefficients) and the Eulerian polynomials, hence
/// the name, but the coefficient type is `Rational` so it can also serve as
/// scratch space for the extended-gcd inverse computation in `Q(eta_N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<Rational>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![Rational::one()] }
    }

    /// `x^n`
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPolynomial::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `deg r < deg divisor`. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let d = divisor.degree().unwrap();
        let lead = divisor.coeffs[d].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![
            Rational::zero();
            self.coeffs.len().saturating_sub(divisor.coeffs.len()) + 1
        ];
        while rem.len() > d {
            let k = rem.len() - 1 - d;
            let factor = rem.last().unwrap() / &lead;
            if !factor.is_zero() {
                quot[k] = factor.clone();
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    let v = &factor * b;
                    rem[k + j] -= v;
                }
            }
            rem.pop();
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= d {
                break;
            }
        }
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, String> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err("inexact polynomial division".into())
        }
    }
}

static CYCLOTOMIC_CACHE: Lazy<Mutex<HashMap<u32, IntPolynomial>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The `N`-th cyclotomic polynomial `Phi_N(x)`, by the exact division
/// `Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d`.
pub fn cyclotomic_polynomial(level: u32) -> IntPolynomial {
    assert!(level >= 1, "cyclotomic_polynomial: level must be >= 1");
    if let Some(p) = CYCLOTOMIC_CACHE.lock().unwrap().get(&level) {
        return p.clone();
    }
    let mut num = IntPolynomial::monomial(level as usize);
    num = num.sub(&IntPolynomial::one());
    let mut den = IntPolynomial::one();
    for d in 1..level {
        if level % d == 0 {
            den = den.mul(&cyclotomic_polynomial(d));
        }
    }
    let phi = num.div_exact(&den).expect("x^N - 1 divisible by product of proper Phi_d");
    CYCLOTOMIC_CACHE.lock().unwrap().insert(level, phi.clone());
    phi
}

/// Euler totient `phi(N)` — the degree of `Phi_N`, computed arithmetically.
pub fn euler_phi(level: u32) -> u32 {
    assert!(level >= 1);
    let mut n = level;
    let mut result = level;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}
