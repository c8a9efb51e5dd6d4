//! Rewriting divergent (leading-exponent-1) generators: every word is a
//! `Q(eta_N)`-linear combination of powers of `t_N` times either a convergent
//! word or a `g_beta` generator. The colors of a block of `m+1` leading ones
//! are resolved simultaneously through an integer matrix whose rows mix the
//! color vectors by single-color insertions.

use crate::cyclo::CycloNum;
use crate::linalg::invert_rational;
use crate::qseries::{g_beta, mdf_polylog, t_series, QSeries};
use crate::rational::{rat_int, Rational};
use crate::words::{stuffle_words, FormalSum, Word};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A generator of the subalgebra: a convergent word (no leading exponent 1;
/// the empty word is the unit) or a `g_beta` generator attached to a tail
/// index (which may itself have leading ones).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Generator {
    Mdf(Word),
    GBeta {
        beta: u32,
        s: Vec<u32>,
        alpha: Vec<u32>,
    },
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Mdf(w) => write!(f, "{w}"),
            Generator::GBeta { beta, s, alpha } => {
                let s: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                let a: Vec<String> = alpha.iter().map(|x| x.to_string()).collect();
                write!(f, "g_{beta}({};{})", s.join(","), a.join(","))
            }
        }
    }
}

/// A finite combination `sum c * t_N^k * generator`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QmzSum {
    pub level: u32,
    pub terms: BTreeMap<(u32, Generator), CycloNum>,
}

impl QmzSum {
    pub fn zero(level: u32) -> Self {
        QmzSum {
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, tpow: u32, g: &Generator, c: &CycloNum) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((tpow, g.clone()))
            .or_insert_with(|| CycloNum::zero(self.level));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(tpow, g.clone()));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level);
        let mut out = self.clone();
        for ((k, g), c) in &other.terms {
            out.add_term(*k, g, c);
        }
        out
    }

    pub fn scale(&self, k: &CycloNum) -> Self {
        let mut out = QmzSum::zero(self.level);
        for ((t, g), c) in &self.terms {
            out.add_term(*t, g, &(c * k));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&CycloNum::from_int(self.level, -1)))
    }

    /// Multiplies by `t_N` (shifts every tag up by one).
    pub fn mul_t(&self) -> Self {
        let mut out = QmzSum::zero(self.level);
        for ((t, g), c) in &self.terms {
            out.add_term(t + 1, g, c);
        }
        out
    }

    /// True iff no term carries a positive power of `t_N`.
    pub fn is_t_free(&self) -> bool {
        self.terms.keys().all(|(t, _)| *t == 0)
    }

    /// The maximal power of `t_N` appearing.
    pub fn t_degree(&self) -> u32 {
        self.terms.keys().map(|(t, _)| *t).max().unwrap_or(0)
    }

    /// Evaluates the combination as a q-series (the round-trip referee).
    pub fn eval_to_qseries(&self, order: usize) -> QSeries {
        let level = self.level;
        let t = t_series(level, order);
        let mut acc = QSeries::zero(level, order);
        for ((tpow, g), c) in &self.terms {
            let base = match g {
                Generator::Mdf(w) => {
                    if w.0.is_empty() {
                        QSeries::one(level, order)
                    } else {
                        mdf_polylog(&w.to_index(level).expect("valid word"), order)
                    }
                }
                Generator::GBeta { beta, s, alpha } => {
                    g_beta(level, *beta, s, alpha, order).expect("valid g index")
                }
            };
            let mut term = base.scale(c);
            for _ in 0..*tpow {
                term = term.mul(&t);
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "level": self.level,
            "terms": self.terms.iter().map(|((tpow, g), c)| {
                let gen = match g {
                    Generator::Mdf(w) => serde_json::json!({
                        "kind": "word",
                        "word": w.0.iter().map(|l| vec![l.0, l.1]).collect::<Vec<_>>(),
                    }),
                    Generator::GBeta { beta, s, alpha } => serde_json::json!({
                        "kind": "g",
                        "beta": beta,
                        "s": s,
                        "alpha": alpha,
                    }),
                };
                serde_json::json!({
                    "tpow": tpow,
                    "generator": gen,
                    "coeff": c.to_json(),
                })
            }).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for QmzSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((t, g), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for _ in 0..*t {
                write!(f, "·t")?;
            }
            write!(f, "·{g}")?;
        }
        Ok(())
    }
}

/// Encodes a color vector as a base-`N` integer, most significant digit
/// first.
pub fn color_index(level: u32, colors: &[u32]) -> usize {
    colors
        .iter()
        .fold(0usize, |acc, &c| acc * level as usize + c as usize)
}

/// Decodes `color_index`.
pub fn color_vector(level: u32, mut index: usize, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for j in (0..len).rev() {
        out[j] = (index % level as usize) as u32;
        index /= level as usize;
    }
    out
}

/// The mixing matrix for a block of `m+1` leading ones at level `N`: a square
/// matrix of size `N^{m+1}` whose row for the color vector
/// `(b_0, b_1, .., b_m)` reads
///
/// `N x_{(b_0,..,b_m)} + sum_{pos=1}^{m} sum_{c} x_{(b_1,..,b_pos,c,b_{pos+1},..,b_m)}`.
///
/// The insertion positions run over the `m` slots strictly inside or after
/// the trailing color vector `(b_1..b_m)`; the slot in front is the one the
/// equation solves for.
pub fn reg_matrix(level: u32, m: u32) -> Vec<Vec<Rational>> {
    let n = level as usize;
    let size = n.pow(m + 1);
    let mut mat = vec![vec![Rational::zero(); size]; size];
    for row in 0..size {
        let colors = color_vector(level, row, m as usize + 1);
        mat[row][row] += rat_int(level as i64);
        let tail = &colors[1..];
        for pos in 1..=m as usize {
            for c in 0..level {
                let mut inserted = tail[..pos].to_vec();
                inserted.push(c);
                inserted.extend_from_slice(&tail[pos..]);
                mat[row][color_index(level, &inserted)] += rat_int(1);
            }
        }
    }
    mat
}

/// Closed-form determinant of [`reg_matrix`]:
/// `N^{N^{m+1}} (m+1) prod_{j=2}^{m} j^{N^{m-j} (N-1)}`.
pub fn reg_matrix_det(level: u32, m: u32) -> Rational {
    let n = rat_int(level as i64);
    let mut det = n.pow(level.pow(m + 1) as i32) * rat_int(m as i64 + 1);
    for j in 2..=m as i64 {
        det *= rat_int(j).pow(
            (level.pow(m - j as u32) * (level - 1)) as i32,
        );
    }
    det
}

/// Rewrites an arbitrary word: the result is a combination of `t_N`-powers
/// times convergent words and `g_beta` generators, equal to the input as a
/// q-series. Words with `L` leading ones use the size-`N^L` mixing matrix
/// and recurse on words with fewer leading ones.
pub fn reduce_word(level: u32, word: &Word) -> Result<QmzSum, String> {
    let l = word.leading_ones();
    if l == 0 {
        let mut out = QmzSum::zero(level);
        out.add_term(0, &Generator::Mdf(word.clone()), &CycloNum::one(level));
        return Ok(out);
    }
    let solutions = reduce_leading_block(level, l, &word.0[l..])?;
    let beta: Vec<u32> = word.0[..l].iter().map(|x| x.1).collect();
    Ok(solutions[color_index(level, &beta)].clone())
}

/// Linear extension of [`reduce_word`].
pub fn reduce_formal(x: &FormalSum) -> Result<QmzSum, String> {
    assert_eq!(
        (x.tpow, x.t_cap_pow),
        (0, 0),
        "reduce_formal expects a plain algebra element"
    );
    let mut out = QmzSum::zero(x.level);
    for (w, c) in &x.terms {
        let r = reduce_word(x.level, w)?;
        out = out.add(&r.scale(c));
    }
    Ok(out)
}

/// Solves for all `N^L` colorings of a block of `L` leading ones in front of
/// the fixed convergent tail `rest` at once.
fn reduce_leading_block(
    level: u32,
    l: usize,
    rest: &[(u32, u32)],
) -> Result<Vec<QmzSum>, String> {
    assert!(l >= 1);
    let n = level as usize;
    let size = n.pow(l as u32);
    let minv = invert_rational(&reg_matrix(level, l as u32 - 1))
        .expect("mixing matrix is invertible");

    // Right-hand sides, one per color vector (b_0, b') of the block.
    let mut b: Vec<QmzSum> = Vec::with_capacity(size);
    for row in 0..size {
        let colors = color_vector(level, row, l);
        let b0 = colors[0];
        let tail_colors = &colors[1..];

        // The base word [1^{L-1}, rest; b', ..].
        let mut base_letters: Vec<(u32, u32)> =
            tail_colors.iter().map(|&c| (1, c)).collect();
        base_letters.extend_from_slice(rest);
        let base = Word(base_letters);

        // t_N times the reduction of the base word.
        let mut rhs = reduce_word(level, &base)?.mul_t();

        // Overflow terms: sum_c z_{1;c} * base minus the L insertion words
        // per color; everything left has fewer leading ones.
        let mut overflow = FormalSum::zero(level);
        for c in 0..level {
            let prod = stuffle_words(level, &Word::letter(1, c), &base)?;
            for (w, cw) in &prod.terms {
                overflow.add_term(w, cw);
            }
            for pos in 0..l {
                let mut ins = tail_colors.to_vec();
                ins.insert(pos, c);
                let mut letters: Vec<(u32, u32)> = ins.iter().map(|&x| (1, x)).collect();
                letters.extend_from_slice(rest);
                overflow.add_term(&Word(letters), &CycloNum::from_int(level, -1));
            }
        }
        // Recursion measure: overflow words either have fewer leading ones
        // at the same weight (insertions are all subtracted, merges shorten
        // the block) or keep `l` leading ones at strictly smaller weight
        // (a lambda-collision of the inserted 1 with the first letter of
        // `rest` regenerates a leading 1 but drops weight).
        let full_weight =
            l as u32 + rest.iter().map(|x| x.0).sum::<u32>();
        debug_assert!(
            overflow
                .terms
                .keys()
                .all(|w| (w.weight(), w.leading_ones()) < (full_weight, l)),
            "overflow must shrink in (weight, leading ones)"
        );
        rhs = rhs.sub(&reduce_formal(&overflow)?);

        // g-generator contributions attached to the base index.
        let g_s: Vec<u32> = base.0.iter().map(|x| x.0).collect();
        let g_a: Vec<u32> = base.0.iter().map(|x| x.1).collect();
        for gamma in 1..level {
            rhs.add_term(
                0,
                &Generator::GBeta {
                    beta: gamma,
                    s: g_s.clone(),
                    alpha: g_a.clone(),
                },
                &CycloNum::one(level),
            );
        }
        if b0 != 0 {
            rhs.add_term(
                0,
                &Generator::GBeta {
                    beta: b0,
                    s: g_s,
                    alpha: g_a,
                },
                &CycloNum::from_int(level, -(level as i64)),
            );
        }
        b.push(rhs);
    }

    // x = M^{-1} b, rationally.
    let mut out = Vec::with_capacity(size);
    for row in &minv {
        let mut acc = QmzSum::zero(level);
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&b[j].scale(&CycloNum::from_rational(level, c.clone())));
            }
        }
        out.push(acc);
    }
    Ok(out)
}
