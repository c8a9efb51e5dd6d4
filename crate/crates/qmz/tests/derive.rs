//! The derivation `q d/dq` on the generator algebra: round-trips against the
//! coefficientwise derivative of the q-expansion, pinned expansions in low
//! depth, and the Leibniz rule.

use qmz::cyclo::CycloNum;
use qmz::derive::{derive_formal, derive_index};
use qmz::omega::omega;
use qmz::qseries::{mdf_polylog, q_derive, MdfIndex};
use qmz::words::{stuffle_words, FormalSum, Word};

fn idx(level: u32, s: &[u32], alpha: &[u32]) -> MdfIndex {
    MdfIndex::new(level, s.to_vec(), alpha.to_vec()).unwrap()
}

/// Evaluating the symbolic derivative must reproduce `q d/dq` of the
/// q-expansion exactly.
#[test]
fn derivative_round_trips() {
    let cases: Vec<(u32, Vec<u32>, Vec<u32>)> = vec![
        (2, vec![1], vec![0]),
        (2, vec![1], vec![1]),
        (2, vec![3], vec![1]),
        (2, vec![2, 1], vec![0, 1]),
        (2, vec![1, 1], vec![1, 1]),
        (2, vec![2, 2], vec![1, 0]),
        (2, vec![1, 1, 1], vec![1, 0, 1]),
        (3, vec![2], vec![1]),
        (3, vec![1, 2], vec![2, 0]),
        (3, vec![2, 1], vec![1, 2]),
        (4, vec![2], vec![3]),
        (4, vec![1, 1], vec![2, 1]),
        (4, vec![2, 1, 1], vec![0, 3, 1]),
    ];
    for (level, s, alpha) in cases {
        let i = idx(level, &s, &alpha);
        let order = 20;
        let lhs = q_derive(&mdf_polylog(&i, order));
        let rhs = derive_index(&i).unwrap().eval_to_qseries(order);
        assert_eq!(lhs, rhs, "D{i}");
    }
}

fn formal(level: u32, terms: &[((&[u32], &[u32]), CycloNum)]) -> FormalSum {
    let mut out = FormalSum::zero(level);
    for ((s, a), c) in terms {
        out.add_term(&Word(s.iter().copied().zip(a.iter().copied()).collect()), c);
    }
    out
}

/// `D[1;1] = [2,1;0,1] - [2,1;1,1] - [2,1;1,0] + [2;1] + omega_{0;-1}[2;0]
///  + omega_{1;1}([1;0] - [1;1])` at every level. (The weight-two collision
/// coefficient is the omega value at the negated color; the two coincide
/// at level 2.)
#[test]
fn derivative_of_weight_one_expansion() {
    for level in [2u32, 3, 4] {
        let om_neg = omega(level, level - 1, 0).values[0].clone();
        let om1 = omega(level, 1, 1).values[1].clone();
        let one = CycloNum::one(level);
        let expect = formal(level, &[
            ((&[2, 1], &[0, 1]), one.clone()),
            ((&[2, 1], &[1, 1]), -one.clone()),
            ((&[2, 1], &[1, 0]), -one.clone()),
            ((&[2], &[1]), one.clone()),
            ((&[2], &[0]), om_neg),
            ((&[1], &[0]), om1.clone()),
            ((&[1], &[1]), -om1),
        ]);
        assert_eq!(derive_index(&idx(level, &[1], &[1])).unwrap(), expect, "level {level}");
    }
}

/// `D[2;1] = [2,2;0,1] - [2,2;1,1] - 2[3,1;1,0] - 2[3,1;1,1] + 2[3;1]
///  - omega_{1;1}([2;0] + [2;1]) + omega_{2;1}([1;0] - [1;1])`.
#[test]
fn derivative_of_weight_two_expansion() {
    for level in [2u32, 3, 4] {
        let om = omega(level, 1, 2).values;
        let one = CycloNum::one(level);
        let two = CycloNum::from_int(level, 2);
        let expect = formal(level, &[
            ((&[2, 2], &[0, 1]), one.clone()),
            ((&[2, 2], &[1, 1]), -one.clone()),
            ((&[3, 1], &[1, 0]), -two.clone()),
            ((&[3, 1], &[1, 1]), -two.clone()),
            ((&[3], &[1]), two),
            ((&[2], &[0]), -om[1].clone()),
            ((&[2], &[1]), -om[1].clone()),
            ((&[1], &[0]), om[2].clone()),
            ((&[1], &[1]), -om[2].clone()),
        ]);
        assert_eq!(derive_index(&idx(level, &[2], &[1])).unwrap(), expect, "level {level}");
    }
}

/// The two level-2 specializations written in bar notation:
/// `D[1bar] = [2,1bar] - [2bar,1] - [2bar,1bar] + [2bar]
///  + 1/4([1] - [1bar] - 2[2])` and
/// `D[2bar] = 2[3bar] - 2[3bar,1bar] - [2bar,2bar] - 2[3bar,1] + [2,2bar]
///  - 1/4([2] + [2bar])`.
#[test]
fn derivative_level2_bar_notation() {
    let q = |n: i64, d: i64| CycloNum::from_rational(2, qmz::rational::rat(n, d));
    let expect1 = formal(2, &[
        ((&[2, 1], &[0, 1]), q(1, 1)),
        ((&[2, 1], &[1, 0]), q(-1, 1)),
        ((&[2, 1], &[1, 1]), q(-1, 1)),
        ((&[2], &[1]), q(1, 1)),
        ((&[1], &[0]), q(1, 4)),
        ((&[1], &[1]), q(-1, 4)),
        ((&[2], &[0]), q(-1, 2)),
    ]);
    assert_eq!(derive_index(&idx(2, &[1], &[1])).unwrap(), expect1);
    let expect2 = formal(2, &[
        ((&[3], &[1]), q(2, 1)),
        ((&[3, 1], &[1, 1]), q(-2, 1)),
        ((&[2, 2], &[1, 1]), q(-1, 1)),
        ((&[3, 1], &[1, 0]), q(-2, 1)),
        ((&[2, 2], &[0, 1]), q(1, 1)),
        ((&[2], &[0]), q(-1, 4)),
        ((&[2], &[1]), q(-1, 4)),
    ]);
    assert_eq!(derive_index(&idx(2, &[2], &[1])).unwrap(), expect2);
}

/// Depth-two expansion of `D[1,1;1,1]`: the shuffle-pattern part as printed,
/// with weight-two collision coefficient `omega_{0;-1}` (again equal to
/// `-omega_{0;1}` only at level 2).
#[test]
fn derivative_depth_two_expansion() {
    for level in [2u32, 3, 4] {
        let om_neg = omega(level, level - 1, 0).values[0].clone();
        let om1 = omega(level, 1, 1).values[1].clone();
        let one = CycloNum::one(level);
        let expect = formal(level, &[
            ((&[2, 1, 1], &[0, 1, 1]), one.clone()),
            ((&[2, 1, 1], &[1, 1, 0]), -one.clone()),
            ((&[2, 1, 1], &[1, 1, 1]), CycloNum::from_int(level, -2)),
            ((&[1, 2, 1], &[1, 0, 1]), one.clone()),
            ((&[1, 2, 1], &[1, 1, 0]), -one.clone()),
            ((&[1, 2, 1], &[1, 1, 1]), -one.clone()),
            ((&[2, 1], &[1, 1]), CycloNum::from_int(level, 2)),
            ((&[1, 2], &[1, 1]), one.clone()),
            ((&[1, 1], &[1, 0]), om1.clone()),
            ((&[1, 1], &[0, 1]), om1.clone()),
            ((&[1, 1], &[1, 1]), -(&om1 + &om1)),
            ((&[1, 2], &[1, 0]), om_neg.clone()),
            ((&[2, 1], &[0, 1]), om_neg.clone()),
        ]);
        assert_eq!(
            derive_index(&idx(level, &[1, 1], &[1, 1])).unwrap(),
            expect,
            "level {level}"
        );
    }
}

/// Generic depth-2 formula: `D[s,t;alpha,beta]` written without the stuffle
/// expansion of `[2;0]*[s,t]` must agree with the implementation.
#[test]
fn derivative_depth_two_closed_form() {
    for (level, s, t, a, b) in [(2u32, 2u32, 1u32, 1u32, 0u32), (3, 1, 2, 2, 1), (4, 2, 2, 3, 2)] {
        let i = idx(level, &[s, t], &[a, b]);
        let one = CycloNum::one(level);
        let mut expect = stuffle_words(level, &Word::letter(2, 0), &Word::from_index(&i)).unwrap();
        let int = |n: i64| CycloNum::from_int(level, n);
        expect.add_term(&Word(vec![(s + 1, a), (t, b)]), &int(2 * s as i64));
        expect.add_term(&Word(vec![(s, a), (t + 1, b)]), &int(t as i64));
        expect.add_term(&Word(vec![(s, a), (t, b), (2, 0)]), &-one.clone());
        expect.add_term(&Word(vec![(s + 1, a), (t, b), (1, 0)]), &int(-(s as i64)));
        expect.add_term(&Word(vec![(s, a), (t + 1, b), (1, 0)]), &int(-(t as i64)));
        for x in 1..=s + 1 {
            let y = s + 2 - x;
            expect.add_term(&Word(vec![(x, a), (y, a), (t, b)]), &int(-(x as i64 - 1)));
        }
        for x in 1..=t + 1 {
            let y = t + 2 - x;
            expect.add_term(&Word(vec![(s, a), (x, b), (y, b)]), &int(-(x as i64 - 1)));
        }
        for x in 1..=t {
            let y = t + 1 - x;
            expect.add_term(&Word(vec![(s + 1, a), (x, b), (y, b)]), &int(-(s as i64)));
        }
        assert_eq!(derive_index(&i).unwrap(), expect, "D{i}");
    }
}

/// Leibniz rule: `D(u * v) - (Du) * v - u * (Dv)` need not vanish as a formal
/// combination of generators (they satisfy linear relations), but it must
/// vanish identically as a q-series. The residue for `u = v = [1;1]` is the
/// source of the depth-3 linear relation used downstream.
#[test]
fn leibniz_residues_vanish_as_series() {
    let order = 25;
    for level in [2u32, 3, 4] {
        let u = Word::letter(1, 1);
        let v = Word(vec![(2, 0)]);
        for (x, y) in [(u.clone(), u.clone()), (u.clone(), v.clone())] {
            let prod = stuffle_words(level, &x, &y).unwrap();
            let lhs = derive_formal(&prod).unwrap();
            let fx = FormalSum::from_word(level, x.clone(), CycloNum::one(level));
            let fy = FormalSum::from_word(level, y.clone(), CycloNum::one(level));
            let rhs = derive_formal(&fx)
                .unwrap()
                .stuffle(&fy)
                .unwrap()
                .add(&fx.stuffle(&derive_formal(&fy).unwrap()).unwrap());
            let residue = lhs.sub(&rhs);
            assert!(
                residue.eval_to_qseries(order).is_zero(),
                "level {level}: Leibniz residue for {x} * {y} is not a null series"
            );
        }
    }
}
