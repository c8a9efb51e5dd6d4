//! Exact arithmetic in the cyclotomic field `Q(eta_N)`.
//!
//! Elements are stored in the power basis `1, eta, .., eta^{phi(N)-1}` and
//! kept canonically reduced mod `Phi_N`, so equality is plain coordinate
//! equality. Mixed-level arithmetic is a hard error: callers must lift to a
//! common level explicitly with [`cyc_normalize`].

use crate::poly::{cyclotomic_polynomial, euler_phi, IntPolynomial};
use crate::rational::{rational_from_str, rational_to_f64, rational_to_string, Rational};
use num_traits::{One, Zero};
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    level: u32,
    coords: Vec<Rational>, // length phi(level), reduced mod Phi_N
}

/// Interprets `raw` as a polynomial in `eta_N` of any length, reduces mod
/// `Phi_N`, and returns the canonical element.
pub fn cyc_normalize(level: u32, raw: &[Rational]) -> CycloNum {
    assert!(level >= 1, "cyc_normalize: level must be >= 1");
    let phi = euler_phi(level) as usize;
    let mut coords: Vec<Rational> = if raw.len() > phi {
        let p = IntPolynomial::new(raw.to_vec());
        let (_, r) = p.div_rem(&cyclotomic_polynomial(level));
        r.coeffs().to_vec()
    } else {
        raw.to_vec()
    };
    coords.resize(phi, Rational::zero());
    CycloNum { level, coords }
}

impl CycloNum {
    pub fn zero(level: u32) -> Self {
        cyc_normalize(level, &[])
    }

    pub fn one(level: u32) -> Self {
        Self::from_rational(level, Rational::one())
    }

    pub fn from_rational(level: u32, r: Rational) -> Self {
        cyc_normalize(level, &[r])
    }

    pub fn from_int(level: u32, n: i64) -> Self {
        Self::from_rational(level, crate::rational::rat_int(n))
    }

    /// The chosen primitive root of unity `eta_N = exp(2 pi i / N)`.
    pub fn eta(level: u32) -> Self {
        cyc_normalize(level, &[Rational::zero(), Rational::one()])
    }

    /// `eta_N^k` for any integer exponent (negative exponents wrap mod N).
    pub fn eta_pow(level: u32, k: i64) -> Self {
        let k = k.rem_euclid(level as i64) as usize;
        let mut raw = vec![Rational::zero(); k + 1];
        raw[k] = Rational::one();
        cyc_normalize(level, &raw)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// True iff the element lies in `Q`, i.e. all nonconstant coordinates
    /// vanish — equivalently it is fixed by every Galois substitution.
    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    /// The constant coordinate if the element is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coords.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        CycloNum {
            level: self.level,
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    fn check_level(&self, other: &Self, op: &str) {
        assert_eq!(
            self.level, other.level,
            "mixed-level cyclotomic {op}: {} vs {} (lift explicitly with cyc_normalize)",
            self.level, other.level
        );
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// `(self as polynomial, Phi_N)`. Errors on zero.
    pub fn inverse(&self) -> Result<Self, String> {
        if self.is_zero() {
            return Err("division by zero in Q(eta_N)".into());
        }
        let phi_n = cyclotomic_polynomial(self.level);
        // Extended gcd: r0 = Phi_N, r1 = self; track s-coefficients on self.
        let mut r0 = phi_n;
        let mut r1 = IntPolynomial::new(self.coords.clone());
        let mut t0 = IntPolynomial::zero();
        let mut t1 = IntPolynomial::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        // r0 is a nonzero constant gcd (Phi_N is irreducible over Q).
        let g = r0.coeff(0);
        if r0.degree() != Some(0) || g.is_zero() {
            return Err("inverse: gcd with Phi_N not a unit (element is zero divisor?)".into());
        }
        let inv = t0.scale(&(Rational::one() / g));
        Ok(cyc_normalize(self.level, inv.coeffs()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, String> {
        self.check_level(other, "division");
        Ok(self * &other.inverse()?)
    }

    /// Numeric embedding at `eta = exp(2 pi i / N)`. Returns `(re, im)`.
    /// `precision` is accepted in binary digits for interface stability; the
    /// computation runs in f64 (53 bits).
    pub fn embed(&self, precision: u32) -> (f64, f64) {
        assert!(precision >= 53, "cyc_embed: precision must be >= 53");
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coords.iter().enumerate() {
            let v = rational_to_f64(c);
            let theta = TAU * j as f64 / self.level as f64;
            re += v * theta.cos();
            im += v * theta.sin();
        }
        (re, im)
    }

    /// Galois substitution `eta -> eta^k`; requires `gcd(k, N) = 1`.
    pub fn galois_conjugate(&self, k: u32) -> Result<Self, String> {
        if num_integer::gcd(k as u64, self.level as u64) != 1 {
            return Err(format!(
                "galois_conjugate: k = {k} not coprime to level {}",
                self.level
            ));
        }
        let mut acc = CycloNum::zero(self.level);
        for (j, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                acc += &CycloNum::eta_pow(self.level, (k as i64) * (j as i64)).scale(c);
            }
        }
        Ok(acc)
    }

    /// Complex conjugation, i.e. the Galois substitution `eta -> eta^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois_conjugate(self.level - if self.level == 1 { 0 } else { 1 })
            .expect("N-1 is coprime to N")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "level": self.level,
            "coords": self.coords.iter().map(rational_to_string).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        let level = v["level"].as_u64().ok_or("CycloNum: missing level")? as u32;
        let coords = v["coords"].as_array().ok_or("CycloNum: missing coords")?;
        let raw: Result<Vec<Rational>, String> = coords
            .iter()
            .map(|c| rational_from_str(c.as_str().ok_or("CycloNum: coord not a string")?))
            .collect();
        Ok(cyc_normalize(level, &raw?))
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c_str = rational_to_string(c);
            let part = match j {
                0 => c_str,
                1 if c.is_one() => "η".into(),
                1 => format!("{c_str}·η"),
                _ if c.is_one() => format!("η^{j}"),
                _ => format!("{c_str}·η^{j}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                CycloNum::$method(self, rhs)
            }
        }
        impl $trait for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                CycloNum::$method(&self, &rhs)
            }
        }
        impl $trait<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                CycloNum::$method(&self, rhs)
            }
        }
        impl $trait<CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                CycloNum::$method(self, &rhs)
            }
        }
    };
}

impl CycloNum {
    fn add(a: &CycloNum, b: &CycloNum) -> CycloNum {
        a.check_level(b, "addition");
        CycloNum {
            level: a.level,
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    fn sub(a: &CycloNum, b: &CycloNum) -> CycloNum {
        a.check_level(b, "subtraction");
        CycloNum {
            level: a.level,
            coords: a
                .coords
                .iter()
                .zip(&b.coords)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    fn mul(a: &CycloNum, b: &CycloNum) -> CycloNum {
        a.check_level(b, "multiplication");
        let pa = IntPolynomial::new(a.coords.clone());
        let pb = IntPolynomial::new(b.coords.clone());
        cyc_normalize(a.level, pa.mul(&pb).coeffs())
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            level: self.level,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        *self = CycloNum::add(self, rhs);
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        *self = CycloNum::sub(self, rhs);
    }
}

impl MulAssign<&CycloNum> for CycloNum {
    fn mul_assign(&mut self, rhs: &CycloNum) {
        *self = CycloNum::mul(self, rhs);
    }
}
