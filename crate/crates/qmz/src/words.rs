//! Words in the letters `z_{s;alpha}`, formal `Q(eta_N)`-linear combinations
//! of them, and the quasi-shuffle (stuffle) product whose collision terms are
//! governed by the diamond product.

use crate::cyclo::CycloNum;
use crate::omega::lambda;
use crate::qseries::{mdf_polylog, MdfIndex, QSeries};
use crate::rational::rational_from_str;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

/// One letter `z_{s;alpha}`: exponent `s >= 1` and color `alpha` mod `N`.
pub type Letter = (u32, u32);

/// A word `z_{s_1;a_1} ... z_{s_d;a_d}`; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(s: u32, alpha: u32) -> Self {
        Word(vec![(s, alpha)])
    }

    pub fn from_index(idx: &MdfIndex) -> Self {
        Word(idx.s.iter().copied().zip(idx.alpha.iter().copied()).collect())
    }

    pub fn to_index(&self, level: u32) -> Result<MdfIndex, String> {
        MdfIndex::new(
            level,
            self.0.iter().map(|l| l.0).collect(),
            self.0.iter().map(|l| l.1).collect(),
        )
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|l| l.0).sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// Number of leading letters with exponent 1.
    pub fn leading_ones(&self) -> usize {
        self.0.iter().take_while(|l| l.0 == 1).count()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.0.iter().map(|l| l.0.to_string()).collect();
        let a: Vec<String> = self.0.iter().map(|l| l.1.to_string()).collect();
        write!(f, "[{};{}]", s.join(","), a.join(","))
    }
}

/// A finite `Q(eta_N)`-linear combination of words, optionally tagged with a
/// power of the weight-one series `t_N` (`tpow`) and of the regularization
/// indeterminate `T` (`t_cap_pow`); plain algebra elements carry `0` for both.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalSum {
    pub level: u32,
    pub tpow: u32,
    pub t_cap_pow: u32,
    pub terms: BTreeMap<Word, CycloNum>,
}

impl FormalSum {
    pub fn zero(level: u32) -> Self {
        FormalSum {
            level,
            tpow: 0,
            t_cap_pow: 0,
            terms: BTreeMap::new(),
        }
    }

    /// The empty word with coefficient 1 (the algebra unit).
    pub fn one(level: u32) -> Self {
        FormalSum::from_word(level, Word::empty(), CycloNum::one(level))
    }

    pub fn from_word(level: u32, w: Word, c: CycloNum) -> Self {
        let mut out = FormalSum::zero(level);
        out.add_term(&w, &c);
        out
    }

    pub fn from_index(idx: &MdfIndex) -> Self {
        FormalSum::from_word(idx.level, Word::from_index(idx), CycloNum::one(idx.level))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_tags(&self, other: &Self, op: &str) {
        assert_eq!(self.level, other.level, "mixed-level formal sum {op}");
        assert_eq!(
            (self.tpow, self.t_cap_pow),
            (other.tpow, other.t_cap_pow),
            "mixed-tag formal sum {op} (combine homogeneous parts separately)"
        );
    }

    pub fn add_term(&mut self, w: &Word, c: &CycloNum) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(w.clone())
            .or_insert_with(|| CycloNum::zero(self.level));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_tags(other, "addition");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-CycloNum::one(self.level)))
    }

    pub fn scale(&self, k: &CycloNum) -> Self {
        if k.is_zero() {
            return FormalSum {
                level: self.level,
                tpow: self.tpow,
                t_cap_pow: self.t_cap_pow,
                terms: BTreeMap::new(),
            };
        }
        FormalSum {
            level: self.level,
            tpow: self.tpow,
            t_cap_pow: self.t_cap_pow,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    pub fn scale_rat(&self, k: &crate::rational::Rational) -> Self {
        self.scale(&CycloNum::from_rational(self.level, k.clone()))
    }

    /// Quasi-shuffle product, extended bilinearly; tags add.
    pub fn stuffle(&self, other: &Self) -> Result<Self, String> {
        assert_eq!(self.level, other.level, "mixed-level stuffle");
        let mut out = FormalSum::zero(self.level);
        out.tpow = self.tpow + other.tpow;
        out.t_cap_pow = self.t_cap_pow + other.t_cap_pow;
        for (w, cw) in &self.terms {
            for (v, cv) in &other.terms {
                let prod = stuffle_words(self.level, w, v)?;
                for (u, cu) in &prod.terms {
                    out.add_term(u, &(&(cw * cv) * cu));
                }
            }
        }
        Ok(out)
    }

    /// Evaluates every word as a multiple divisor function and returns the
    /// resulting `q`-expansion. Requires plain tags (`tpow = t_cap_pow = 0`).
    pub fn eval_to_qseries(&self, order: usize) -> QSeries {
        assert_eq!(
            (self.tpow, self.t_cap_pow),
            (0, 0),
            "eval_to_qseries needs a plain algebra element"
        );
        self.eval_words_only(order)
    }

    /// Evaluates the word part only, ignoring tags (callers multiply in the
    /// `t_N` factor themselves when needed).
    pub fn eval_words_only(&self, order: usize) -> QSeries {
        let mut acc = QSeries::zero(self.level, order);
        for (w, c) in &self.terms {
            let series = if w.0.is_empty() {
                QSeries::constant(self.level, order, CycloNum::one(self.level))
            } else {
                let idx = w.to_index(self.level).expect("word is a valid index");
                mdf_polylog(&idx, order)
            };
            acc = acc.add(&series.scale(c));
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "level": self.level,
            "tpow": self.tpow,
            "Tpow": self.t_cap_pow,
            "terms": self.terms.iter().map(|(w, c)| {
                serde_json::json!({
                    "word": w.0.iter().map(|l| vec![l.0, l.1]).collect::<Vec<_>>(),
                    "coeff": c.to_json(),
                })
            }).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        let level = v["level"].as_u64().ok_or("FormalSum: missing level")? as u32;
        let mut out = FormalSum::zero(level);
        out.tpow = v["tpow"].as_u64().unwrap_or(0) as u32;
        out.t_cap_pow = v["Tpow"].as_u64().unwrap_or(0) as u32;
        for t in v["terms"].as_array().ok_or("FormalSum: missing terms")? {
            let letters = t["word"].as_array().ok_or("FormalSum: missing word")?;
            let mut w = Vec::with_capacity(letters.len());
            for l in letters {
                let pair = l.as_array().ok_or("FormalSum: letter not a pair")?;
                if pair.len() != 2 {
                    return Err("FormalSum: letter not a pair".into());
                }
                w.push((
                    pair[0].as_u64().ok_or("FormalSum: bad exponent")? as u32,
                    pair[1].as_u64().ok_or("FormalSum: bad color")? as u32,
                ));
            }
            out.add_term(&Word(w), &CycloNum::from_json(&t["coeff"])?);
        }
        Ok(out)
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.as_rational().map_or(false, |r| r.is_one()) {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c})·{w}")?;
            }
        }
        Ok(())
    }
}

/// Diamond product of two letters:
/// `z_{a;alpha} <> z_{b;beta} = sum_{j<=a} lambda^j_{a,b;alpha-beta} z_{j;alpha}
///  + sum_{j<=b} lambda^j_{b,a;beta-alpha} z_{j;beta}
///  + [alpha = beta] z_{a+b;alpha}`.
pub fn diamond(level: u32, x: Letter, y: Letter) -> Result<FormalSum, String> {
    let (a, alpha) = x;
    let (b, beta) = y;
    let mut out = FormalSum::zero(level);
    let d_ab = (alpha as i64 - beta as i64).rem_euclid(level as i64) as u32;
    let d_ba = (beta as i64 - alpha as i64).rem_euclid(level as i64) as u32;
    for j in 1..=a {
        out.add_term(&Word::letter(j, alpha), &lambda(level, j, a, b, d_ab)?);
    }
    for j in 1..=b {
        out.add_term(&Word::letter(j, beta), &lambda(level, j, b, a, d_ba)?);
    }
    if alpha % level == beta % level {
        out.add_term(&Word::letter(a + b, alpha % level), &CycloNum::one(level));
    }
    Ok(out)
}

/// Diamond product with the collision term restricted to the plain merge
/// `[alpha = beta] z_{a+b;alpha}` — the quasi-shuffle structure of the value
/// side, where the weight-dropping terms are absent.
pub fn diamond_merge_only(level: u32, x: Letter, y: Letter) -> FormalSum {
    let (a, alpha) = x;
    let (b, beta) = y;
    let mut out = FormalSum::zero(level);
    if alpha % level == beta % level {
        out.add_term(&Word::letter(a + b, alpha % level), &CycloNum::one(level));
    }
    out
}

/// Quasi-shuffle recursion `aw * bv = a(w * bv) + b(aw * v) + (a<>b)(w * v)`
/// for an arbitrary diamond rule on letters.
fn stuffle_with<F>(level: u32, w: &Word, v: &Word, dia: &F) -> Result<FormalSum, String>
where
    F: Fn(Letter, Letter) -> Result<FormalSum, String>,
{
    if w.0.is_empty() {
        return Ok(FormalSum::from_word(level, v.clone(), CycloNum::one(level)));
    }
    if v.0.is_empty() {
        return Ok(FormalSum::from_word(level, w.clone(), CycloNum::one(level)));
    }
    let a = w.0[0];
    let b = v.0[0];
    let w_tail = Word(w.0[1..].to_vec());
    let v_tail = Word(v.0[1..].to_vec());
    let mut out = prepend_letter(a, &stuffle_with(level, &w_tail, v, dia)?);
    out = out.add(&prepend_letter(b, &stuffle_with(level, w, &v_tail, dia)?));
    let collision = dia(a, b)?;
    let tails = stuffle_with(level, &w_tail, &v_tail, dia)?;
    for (head, ch) in &collision.terms {
        for (tail, ct) in &tails.terms {
            let mut word = head.0.clone();
            word.extend_from_slice(&tail.0);
            out.add_term(&Word(word), &(ch * ct));
        }
    }
    Ok(out)
}

fn prepend_letter(l: Letter, x: &FormalSum) -> FormalSum {
    let mut out = FormalSum::zero(x.level);
    for (w, c) in &x.terms {
        let mut word = vec![l];
        word.extend_from_slice(&w.0);
        out.add_term(&Word(word), c);
    }
    out
}

/// Stuffle product of two words with the full diamond collision rule, so that
/// evaluation to multiple divisor functions is an algebra homomorphism.
pub fn stuffle_words(level: u32, w: &Word, v: &Word) -> Result<FormalSum, String> {
    stuffle_with(level, w, v, &|a, b| diamond(level, a, b))
}

/// Stuffle product with plain-merge collisions (value-side quasi-shuffle).
pub fn stuffle_words_merge_only(level: u32, w: &Word, v: &Word) -> FormalSum {
    stuffle_with(level, w, v, &|a, b| Ok(diamond_merge_only(level, a, b)))
        .expect("merge-only diamond cannot fail")
}

/// Parses the coefficient strings produced by [`FormalSum::to_json`] back
/// (kept here so round-trip tests do not need the CLI).
pub fn coeff_from_str(level: u32, s: &str) -> Result<CycloNum, String> {
    Ok(CycloNum::from_rational(level, rational_from_str(s)?))
}
