//! The derivation `D = q d/dq` expressed inside the algebra of multiple
//! divisor functions: `D` applied to a generator is again a finite
//! combination of generators of weight (+2) and depth (+1).

use crate::cyclo::CycloNum;
use crate::qseries::MdfIndex;
use crate::words::{stuffle_words, FormalSum, Word};

/// `D [s; alpha]` as a formal combination of generators. The expansion is
///
/// `[2;0]*[s;alpha] + sum_j (d-j+1) s_j [s+e_j; alpha]
///  - sum_j s_j [s+e_j,1; alpha,0] - [s,2; alpha,0]
///  - sum_j sum_{a+b=s_j+2} (a-1) [.., a, b, ..; alpha(j)]
///  - sum_j sum_{l<j} sum_{a+b=s_j+1} s_l [.. s_l+1 .., a, b, ..; alpha(j)]`
///
/// where `alpha(j)` repeats the `j`-th color once and the stuffle product in
/// the first term is expanded into generators.
pub fn derive_index(idx: &MdfIndex) -> Result<FormalSum, String> {
    let level = idx.level;
    let d = idx.depth();
    let s = &idx.s;
    let alpha = &idx.alpha;
    let word = Word::from_index(idx);

    // [2;0] * [s; alpha], fully expanded.
    let mut out = stuffle_words(level, &Word::letter(2, 0), &word)?;

    let int = |n: i64| CycloNum::from_int(level, n);

    // alpha with the j-th color repeated once (j is 0-based here).
    let repeat_color = |j: usize| -> Vec<u32> {
        let mut a = alpha[..=j].to_vec();
        a.extend_from_slice(&alpha[j..]);
        a
    };

    for j in 0..d {
        // + (d-j+1) s_j [s+e_j; alpha]
        let mut s_up = s.clone();
        s_up[j] += 1;
        out.add_term(
            &Word(s_up.iter().copied().zip(alpha.iter().copied()).collect()),
            &int((d - j) as i64 * s[j] as i64),
        );
        // - s_j [s+e_j, 1; alpha, 0]
        let mut letters: Vec<(u32, u32)> =
            s_up.iter().copied().zip(alpha.iter().copied()).collect();
        letters.push((1, 0));
        out.add_term(&Word(letters), &int(-(s[j] as i64)));
        // - sum_{a+b=s_j+2} (a-1) [s_1..s_{j-1}, a, b, s_{j+1}..; alpha(j)]
        let colors = repeat_color(j);
        for a in 1..=s[j] + 1 {
            let b = s[j] + 2 - a;
            let mut sv = s[..j].to_vec();
            sv.push(a);
            sv.push(b);
            sv.extend_from_slice(&s[j + 1..]);
            out.add_term(
                &Word(sv.into_iter().zip(colors.iter().copied()).collect()),
                &int(-(a as i64 - 1)),
            );
        }
        // - sum_{l<j} sum_{a+b=s_j+1} s_l [.. s_l+1 .., a, b, ..; alpha(j)]
        for l in 0..j {
            for a in 1..=s[j] {
                let b = s[j] + 1 - a;
                let mut sv = s[..j].to_vec();
                sv[l] += 1;
                sv.push(a);
                sv.push(b);
                sv.extend_from_slice(&s[j + 1..]);
                out.add_term(
                    &Word(sv.into_iter().zip(colors.iter().copied()).collect()),
                    &int(-(s[l] as i64)),
                );
            }
        }
    }
    // - [s, 2; alpha, 0]
    let mut letters: Vec<(u32, u32)> = s.iter().copied().zip(alpha.iter().copied()).collect();
    letters.push((2, 0));
    out.add_term(&Word(letters), &int(-1));
    Ok(out)
}

/// `D` extended linearly to formal sums of generators (tags must be plain:
/// `D` of `t_N`-tagged or `T`-tagged elements is not defined here).
pub fn derive_formal(x: &FormalSum) -> Result<FormalSum, String> {
    assert_eq!(
        (x.tpow, x.t_cap_pow),
        (0, 0),
        "derive_formal needs a plain algebra element"
    );
    let mut out = FormalSum::zero(x.level);
    for (w, c) in &x.terms {
        if w.0.is_empty() {
            continue; // constants die under q d/dq
        }
        let dw = derive_index(&w.to_index(x.level)?)?;
        for (u, cu) in &dw.terms {
            out.add_term(u, &(c * cu));
        }
    }
    Ok(out)
}
