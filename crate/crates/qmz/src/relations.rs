//! From the exact algebra to identities among multiple zeta values at level
//! `N`: the weight-`w` projection sending convergent words to zeta symbols
//! and `g_beta` generators to `Gamma_beta` constants, star-regularized
//! values as polynomials in `T`, and the relation miner (projections of
//! derivative images and Leibniz residues, deduplicated exactly and
//! certified numerically).

use crate::cyclo::CycloNum;
use crate::derive::{derive_formal, derive_index};
use crate::linalg::invert_rational;
use crate::numeric::{cyclo_to_complex, MzvSymbol};
use crate::qseries::MdfIndex;
use crate::rational::Rational;
use crate::reduce::{color_index, color_vector, reduce_formal, reg_matrix, Generator, QmzSum};
use crate::words::{stuffle_words_merge_only, FormalSum, Word};
use num_complex::Complex64;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A finite `Q(eta_N)`-linear combination of numerically evaluable symbols.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MzvCombo {
    pub level: u32,
    pub terms: BTreeMap<MzvSymbol, CycloNum>,
}

impl MzvCombo {
    pub fn zero(level: u32) -> Self {
        MzvCombo {
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, sym: &MzvSymbol, c: &CycloNum) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(sym.clone())
            .or_insert_with(|| CycloNum::zero(self.level));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(sym);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s, c);
        }
        out
    }

    pub fn scale(&self, k: &CycloNum) -> Self {
        let mut out = MzvCombo::zero(self.level);
        for (s, c) in &self.terms {
            out.add_term(s, &(c * k));
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Numeric value with accumulated error bound.
    pub fn eval(&self, cutoff: u64) -> Result<(Complex64, f64), String> {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut bound = 0.0f64;
        for (sym, c) in &self.terms {
            let (v, b) = sym.value(cutoff)?;
            let z = cyclo_to_complex(c);
            acc += z * v;
            bound += z.norm() * b;
        }
        Ok((acc, bound))
    }
}

impl fmt::Display for MzvCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})·{s}")?;
        }
        Ok(())
    }
}

/// A polynomial in the regularization variable `T` with [`MzvCombo`]
/// coefficients, ascending degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TPolynomial {
    pub level: u32,
    pub coeffs: Vec<MzvCombo>,
}

impl TPolynomial {
    pub fn zero(level: u32) -> Self {
        TPolynomial {
            level,
            coeffs: vec![],
        }
    }

    pub fn from_combo(c: MzvCombo) -> Self {
        let level = c.level;
        let mut p = TPolynomial {
            level,
            coeffs: vec![c],
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_empty()) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> MzvCombo {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| MzvCombo::zero(self.level))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.level, other.level);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k).add(&other.coeff(k)));
        }
        let mut out = TPolynomial {
            level: self.level,
            coeffs,
        };
        out.trim();
        out
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        let mut out = TPolynomial {
            level: self.level,
            coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(),
        };
        out.trim();
        out
    }

    /// Multiplies by `T`.
    pub fn mul_t(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![MzvCombo::zero(self.level)];
        coeffs.extend(self.coeffs.iter().cloned());
        TPolynomial {
            level: self.level,
            coeffs,
        }
    }

    /// Numeric values of all `T`-coefficients with bounds.
    pub fn eval_coeffs(&self, cutoff: u64) -> Result<Vec<(Complex64, f64)>, String> {
        self.coeffs.iter().map(|c| c.eval(cutoff)).collect()
    }
}

impl fmt::Display for TPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + T^{k}·")?;
            }
            write!(f, "[{c}]")?;
        }
        Ok(())
    }
}

/// The weight-`w` projection applied to a reduced element: a term
/// `t^k · gen` contributes at `T`-degree `k` where a convergent word of
/// weight exactly `w - k` maps to its zeta symbol, a `g_beta` generator
/// whose index has weight exactly `w - k - 1` maps to `Gamma_beta`, and
/// anything of lower weight maps to zero. Higher weight than the target is
/// an error (the input must lie in the weight-`w` filtration).
pub fn z_project(x: &QmzSum, w: u32) -> Result<TPolynomial, String> {
    let level = x.level;
    let mut out = TPolynomial::zero(level);
    for ((tpow, g), c) in &x.terms {
        if *tpow > w {
            return Err(format!("t-power {tpow} exceeds projection weight {w}"));
        }
        let target = (w - tpow) as i64;
        let sym = match g {
            Generator::Mdf(word) => {
                let weight = word.weight() as i64;
                if weight > target {
                    return Err(format!(
                        "word {word} has weight {weight} above the projection target {target}"
                    ));
                }
                if weight < target {
                    continue;
                }
                if word.0.is_empty() {
                    MzvSymbol::Unit { level }
                } else {
                    if word.leading_ones() > 0 {
                        return Err(format!(
                            "divergent word {word} at top weight: reduce the input first"
                        ));
                    }
                    MzvSymbol::Zeta {
                        level,
                        s: word.0.iter().map(|l| l.0).collect(),
                        alpha: word.0.iter().map(|l| l.1).collect(),
                    }
                }
            }
            Generator::GBeta { beta, s, alpha } => {
                let weight: i64 = s.iter().map(|&x| x as i64).sum();
                if weight > target - 1 {
                    return Err(format!(
                        "g_{beta} index weight {weight} above the projection target {target}"
                    ));
                }
                if weight < target - 1 {
                    continue;
                }
                MzvSymbol::Gamma {
                    level,
                    beta: *beta,
                    s: s.clone(),
                    alpha: alpha.clone(),
                }
            }
        };
        let mut combo = MzvCombo::zero(level);
        combo.add_term(&sym, c);
        out = out.add(&TPolynomial::from_combo(combo).mul_t_pow(*tpow as usize));
    }
    Ok(out)
}

impl TPolynomial {
    fn mul_t_pow(&self, k: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.mul_t();
        }
        p
    }
}

/// Star-regularized value of an arbitrary word as a polynomial in `T`.
/// Convergent words map to their zeta symbol; a block of `L` leading ones is
/// resolved by the same size-`N^L` color-mixing system as the word-level
/// rewriting, with the plain merge stuffle (zeta values see no weight-drop
/// collisions) and `Gamma` constants in place of the `g` generators.
pub fn zstar_word(level: u32, word: &Word) -> Result<TPolynomial, String> {
    let l = word.leading_ones();
    if l == 0 {
        let mut combo = MzvCombo::zero(level);
        let sym = if word.0.is_empty() {
            MzvSymbol::Unit { level }
        } else {
            MzvSymbol::Zeta {
                level,
                s: word.0.iter().map(|x| x.0).collect(),
                alpha: word.0.iter().map(|x| x.1).collect(),
            }
        };
        combo.add_term(&sym, &CycloNum::one(level));
        return Ok(TPolynomial::from_combo(combo));
    }
    let solutions = zstar_leading_block(level, l, &word.0[l..])?;
    let beta: Vec<u32> = word.0[..l].iter().map(|x| x.1).collect();
    Ok(solutions[color_index(level, &beta)].clone())
}

/// Linear extension of [`zstar_word`] (expects a plain formal sum).
pub fn zstar_formal(x: &FormalSum) -> Result<TPolynomial, String> {
    assert_eq!((x.tpow, x.t_cap_pow), (0, 0));
    let mut out = TPolynomial::zero(x.level);
    for (w, c) in &x.terms {
        out = out.add(&zstar_word(x.level, w)?.scale(c));
    }
    Ok(out)
}

/// `zeta*_N(s; alpha)` for an index with any number of leading ones.
pub fn zstar_regularized(level: u32, s: &[u32], alpha: &[u32]) -> Result<TPolynomial, String> {
    if s.len() != alpha.len() || s.is_empty() {
        return Err("index arity mismatch".to_string());
    }
    if alpha.iter().any(|&a| a >= level) {
        return Err("color out of range".to_string());
    }
    zstar_word(level, &Word(s.iter().copied().zip(alpha.iter().copied()).collect()))
}

fn zstar_leading_block(
    level: u32,
    l: usize,
    rest: &[(u32, u32)],
) -> Result<Vec<TPolynomial>, String> {
    let n = level as usize;
    let size = n.pow(l as u32);
    let minv = invert_rational(&reg_matrix(level, l as u32 - 1))
        .expect("mixing matrix is invertible");

    let mut b: Vec<TPolynomial> = Vec::with_capacity(size);
    for row in 0..size {
        let colors = color_vector(level, row, l);
        let b0 = colors[0];
        let tail_colors = &colors[1..];

        let mut base_letters: Vec<(u32, u32)> =
            tail_colors.iter().map(|&c| (1, c)).collect();
        base_letters.extend_from_slice(rest);
        let base = Word(base_letters);

        let mut rhs = zstar_word(level, &base)?.mul_t();

        // Everything in sum_c z_{1;c} *' base beyond the block insertions
        // has strictly fewer leading ones (the merge stuffle cannot
        // recreate a leading 1).
        let mut overflow = FormalSum::zero(level);
        for c in 0..level {
            let prod = stuffle_words_merge_only(level, &Word::letter(1, c), &base);
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
        debug_assert!(overflow.terms.keys().all(|w| w.leading_ones() < l));
        rhs = rhs.add(&zstar_formal(&overflow)?.scale(&CycloNum::from_int(level, -1)));

        let g_s: Vec<u32> = base.0.iter().map(|x| x.0).collect();
        let g_a: Vec<u32> = base.0.iter().map(|x| x.1).collect();
        let mut combo = MzvCombo::zero(level);
        for gamma in 1..level {
            combo.add_term(
                &MzvSymbol::Gamma {
                    level,
                    beta: gamma,
                    s: g_s.clone(),
                    alpha: g_a.clone(),
                },
                &CycloNum::one(level),
            );
        }
        if b0 != 0 {
            combo.add_term(
                &MzvSymbol::Gamma {
                    level,
                    beta: b0,
                    s: g_s,
                    alpha: g_a,
                },
                &CycloNum::from_int(level, -(level as i64)),
            );
        }
        rhs = rhs.add(&TPolynomial::from_combo(combo));
        b.push(rhs);
    }

    let mut out = Vec::with_capacity(size);
    for row in &minv {
        let mut acc = TPolynomial::zero(level);
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&b[j].scale(&CycloNum::from_rational(level, c.clone())));
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// A certified rational linear relation `sum coeff · symbol = 0`.
#[derive(Clone, Debug)]
pub struct RelationRecord {
    pub level: u32,
    pub weight: u32,
    pub terms: Vec<(MzvSymbol, Rational)>,
    pub provenance: String,
    pub residual: f64,
}

impl RelationRecord {
    /// Parses the JSON emitted by [`RelationRecord::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        let level = v["level"]
            .as_u64()
            .ok_or("missing numeric \"level\"")? as u32;
        let weight = v["weight"]
            .as_u64()
            .ok_or("missing numeric \"weight\"")? as u32;
        let mut terms = Vec::new();
        for t in v["terms"].as_array().ok_or("missing \"terms\" array")? {
            let coeff: Rational = t["coeff"]
                .as_str()
                .ok_or("term coefficient must be a \"p/q\" string")?
                .parse()
                .map_err(|e| format!("bad coefficient: {e}"))?;
            let ints = |key: &str| -> Result<Vec<u32>, String> {
                t[key]
                    .as_array()
                    .ok_or_else(|| format!("term missing \"{key}\""))?
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|n| n as u32)
                            .ok_or_else(|| format!("bad entry in \"{key}\""))
                    })
                    .collect()
            };
            let sym = match t["kind"].as_str() {
                Some("zeta") => MzvSymbol::Zeta {
                    level,
                    s: ints("s")?,
                    alpha: ints("alpha")?,
                },
                Some("gamma") => MzvSymbol::Gamma {
                    level,
                    beta: t["beta"].as_u64().ok_or("gamma term missing \"beta\"")? as u32,
                    s: ints("s")?,
                    alpha: ints("alpha")?,
                },
                Some("one") => MzvSymbol::Unit { level },
                other => return Err(format!("unknown term kind {other:?}")),
            };
            terms.push((sym, coeff));
        }
        Ok(RelationRecord {
            level,
            weight,
            terms,
            provenance: v["provenance"].as_str().unwrap_or("").to_string(),
            residual: v["residual"].as_f64().unwrap_or(f64::NAN),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "level": self.level,
            "weight": self.weight,
            "terms": self.terms.iter().map(|(sym, c)| {
                let mut j = sym.to_json();
                j["coeff"] = serde_json::Value::String(c.to_string());
                j
            }).collect::<Vec<_>>(),
            "provenance": self.provenance,
            "residual": self.residual,
        })
    }
}

impl fmt::Display for RelationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (sym, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})·{sym}")?;
        }
        write!(f, " = 0   [{}; residual {:.2e}]", self.provenance, self.residual)
    }
}

/// Numeric residual `|sum coeff · value|`; the relation is considered
/// certified when the residual is below the tolerance plus accumulated
/// summation bounds.
pub fn verify_relation(r: &RelationRecord, cutoff: u64) -> Result<f64, String> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (sym, c) in &r.terms {
        let (v, _) = sym.value(cutoff)?;
        use num_traits::ToPrimitive;
        let cf = c.to_f64().ok_or_else(|| format!("coefficient {c} overflows f64"))?;
        acc += Complex64::new(cf, 0.0) * v;
    }
    Ok(acc.norm())
}

/// Mines `Q`-linear relations among weight-`w` zeta and `Gamma` symbols at
/// level `N`: projects (a) derivative images of every index of weight at
/// most `w - 2` and depth at most `depth_max`, and (b) Leibniz residues of
/// letter pairs of total weight `w - 2`, through the word rewriting and the
/// weight-`w` projection; every `T`-degree coefficient must vanish. Rows are
/// deduplicated by exact Gaussian elimination over `Q` and certified
/// numerically at the given cutoff.
pub fn emit_relations(
    level: u32,
    w: u32,
    depth_max: usize,
    cutoff: u64,
) -> Result<Vec<RelationRecord>, String> {
    if w < 3 {
        return Err("weight must be at least 3".to_string());
    }
    let mut sources: Vec<(String, FormalSum)> = Vec::new();

    // Derivative images of low-weight indices.
    for weight in 1..=w - 2 {
        for idx in indices_of_weight(level, weight, depth_max) {
            let x = derive_index(&idx)?;
            sources.push((format!("D{idx}"), x));
        }
    }

    // Leibniz residues D(u*v) - (Du)*v - u*(Dv) for letter pairs; these are
    // null q-series, so their projections vanish at every weight.
    for a in 1..=w.saturating_sub(3) {
        let b = w - 2 - a;
        if b < a || b == 0 {
            continue;
        }
        for ca in 0..level {
            for cb in 0..level {
                if a == b && cb < ca {
                    continue;
                }
                let u = Word::letter(a, ca);
                let v = Word::letter(b, cb);
                let prod = crate::words::stuffle_words(level, &u, &v)?;
                let fu = FormalSum::from_word(level, u.clone(), CycloNum::one(level));
                let fv = FormalSum::from_word(level, v.clone(), CycloNum::one(level));
                let residue = derive_formal(&prod)?.sub(
                    &derive_formal(&fu)?
                        .stuffle(&fv)?
                        .add(&fu.stuffle(&derive_formal(&fv)?)?),
                );
                sources.push((format!("Leibniz {u}*{v}"), residue));
            }
        }
    }

    // Project every source; collect candidate vanishing combinations,
    // bucketed by the weight they live in (w minus the T-degree).
    let mut candidates: Vec<(String, u32, MzvCombo)> = Vec::new();
    for (prov, x) in sources {
        let reduced = reduce_formal(&x)?;
        let proj = z_project(&reduced, w)?;
        for (k, combo) in proj.coeffs.iter().enumerate() {
            if !combo.is_empty() {
                candidates.push((prov.clone(), w - k as u32, combo.clone()));
            }
        }
    }

    // Exact Gaussian elimination per weight bucket.
    let weights: BTreeSet<u32> = candidates.iter().map(|c| c.1).collect();
    let mut records = Vec::new();
    for bucket_w in weights {
        let rows: Vec<&(String, u32, MzvCombo)> =
            candidates.iter().filter(|c| c.1 == bucket_w).collect();
        let symbols: BTreeSet<MzvSymbol> = rows
            .iter()
            .flat_map(|r| r.2.terms.keys().cloned())
            .collect();
        let symbols: Vec<MzvSymbol> = symbols.into_iter().collect();
        let mut pivots: Vec<(usize, Vec<Rational>, String)> = Vec::new();
        for (prov, _, combo) in rows {
            let Some(mut vec) = rational_vector(combo, &symbols) else {
                continue; // coefficients not proportional to a rational row
            };
            for (pcol, prow, _) in &pivots {
                if !vec[*pcol].is_zero() {
                    let f = vec[*pcol].clone();
                    for (x, p) in vec.iter_mut().zip(prow) {
                        *x -= &f * p;
                    }
                }
            }
            if let Some(col) = vec.iter().position(|x| !x.is_zero()) {
                let lead = vec[col].clone();
                for x in vec.iter_mut() {
                    *x /= &lead;
                }
                pivots.push((col, vec, prov.clone()));
            }
        }
        pivots.sort_by_key(|p| p.0);
        for (_, vec, prov) in pivots {
            let terms: Vec<(MzvSymbol, Rational)> = symbols
                .iter()
                .cloned()
                .zip(vec.iter().cloned())
                .filter(|(_, c)| !c.is_zero())
                .collect();
            let mut rec = RelationRecord {
                level,
                weight: bucket_w,
                terms,
                provenance: prov,
                residual: f64::NAN,
            };
            rec.residual = verify_relation(&rec, cutoff)?;
            records.push(rec);
        }
    }
    Ok(records)
}

/// Expresses a combination as a rational row over the given symbol basis,
/// after dividing by its first nonzero coefficient. Returns `None` when the
/// coefficients are not all rational multiples of one cyclotomic number.
fn rational_vector(combo: &MzvCombo, symbols: &[MzvSymbol]) -> Option<Vec<Rational>> {
    let lead = symbols
        .iter()
        .find_map(|s| combo.terms.get(s))?
        .clone();
    let inv = lead.inverse().ok()?;
    let mut out = Vec::with_capacity(symbols.len());
    for s in symbols {
        match combo.terms.get(s) {
            None => out.push(Rational::zero()),
            Some(c) => out.push((c * &inv).as_rational()?),
        }
    }
    Some(out)
}

/// All indices `(s; alpha)` of the exact given weight at the level, with
/// depth at most `depth_max`.
pub fn indices_of_weight(level: u32, weight: u32, depth_max: usize) -> Vec<MdfIndex> {
    let mut out = Vec::new();
    let mut s = Vec::new();
    fn rec(
        level: u32,
        remaining: u32,
        depth_max: usize,
        s: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if remaining == 0 {
            if !s.is_empty() {
                out.push(s.clone());
            }
            return;
        }
        if s.len() == depth_max {
            return;
        }
        for next in 1..=remaining {
            s.push(next);
            rec(level, remaining - next, depth_max, s, out);
            s.pop();
        }
    }
    let mut shapes = Vec::new();
    rec(level, weight, depth_max, &mut s, &mut shapes);
    for shape in shapes {
        let d = shape.len();
        let n = level as usize;
        for code in 0..n.pow(d as u32) {
            let alpha = color_vector(level, code, d);
            out.push(MdfIndex::new(level, shape.clone(), alpha).expect("valid index"));
        }
    }
    out
}

/// Reduces a candidate relation (as symbol/coefficient pairs) against a set
/// of emitted records; returns true iff it lies in their rational span.
/// Used to check that a known printed identity is implied by the mined
/// basis.
pub fn relation_in_span(records: &[RelationRecord], target: &[(MzvSymbol, Rational)]) -> bool {
    let symbols: BTreeSet<MzvSymbol> = records
        .iter()
        .flat_map(|r| r.terms.iter().map(|t| t.0.clone()))
        .chain(target.iter().map(|t| t.0.clone()))
        .collect();
    let symbols: Vec<MzvSymbol> = symbols.into_iter().collect();
    let pos = |s: &MzvSymbol| symbols.iter().position(|x| x == s).unwrap();
    let mut vec = vec![Rational::zero(); symbols.len()];
    for (s, c) in target {
        vec[pos(s)] += c.clone();
    }
    // Eliminate with each record row (records are already echelonized).
    for r in records {
        let Some((lead_sym, lead_c)) = r.terms.first() else {
            continue;
        };
        let col = pos(lead_sym);
        if vec[col].is_zero() {
            continue;
        }
        let f = vec[col].clone() / lead_c.clone();
        for (s, c) in &r.terms {
            vec[pos(s)] -= &f * c;
        }
    }
    vec.iter().all(|x| x.is_zero())
}
