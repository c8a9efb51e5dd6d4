//! The weight projection onto zeta/Gamma symbols, star-regularized values
//! as polynomials in `T`, and the relation miner with numeric certification.

use qmz::cyclo::CycloNum;
use qmz::numeric::{gamma_numeric, zeta_numeric, MzvSymbol};
use qmz::rational::{rat, rat_int, Rational};
use qmz::reduce::reduce_word;
use qmz::relations::{
    emit_relations, relation_in_span, verify_relation, z_project, zstar_regularized, MzvCombo,
    RelationRecord, TPolynomial,
};
use qmz::words::Word;

fn zeta(level: u32, s: &[u32], alpha: &[u32]) -> MzvSymbol {
    MzvSymbol::Zeta {
        level,
        s: s.to_vec(),
        alpha: alpha.to_vec(),
    }
}

fn gamma(level: u32, beta: u32, s: &[u32], alpha: &[u32]) -> MzvSymbol {
    MzvSymbol::Gamma {
        level,
        beta,
        s: s.to_vec(),
        alpha: alpha.to_vec(),
    }
}

fn combo(level: u32, terms: &[(MzvSymbol, Rational)]) -> MzvCombo {
    let mut c = MzvCombo::zero(level);
    for (s, q) in terms {
        c.add_term(s, &CycloNum::from_rational(level, q.clone()));
    }
    c
}

#[test]
fn projection_of_convergent_and_divergent_generators() {
    // A convergent word passes through at its own weight and dies above it.
    let r = reduce_word(2, &Word(vec![(2, 1)])).unwrap();
    let p = z_project(&r, 2).unwrap();
    assert_eq!(p.degree(), 0);
    assert_eq!(p.coeff(0), combo(2, &[(zeta(2, &[2], &[1]), rat_int(1))]));
    let p3 = z_project(&r, 3).unwrap();
    assert!(p3.coeffs.is_empty());

    // The reduced weight-one divergent generator projects to the degree-one
    // polynomial (T + Gamma_1)/2 at level 2 — the regularized value.
    let r = reduce_word(2, &Word::letter(1, 0)).unwrap();
    let p = z_project(&r, 1).unwrap();
    assert_eq!(p.coeff(0), combo(2, &[(gamma(2, 1, &[], &[]), rat(1, 2))]));
    assert_eq!(
        p.coeff(1),
        combo(2, &[(MzvSymbol::Unit { level: 2 }, rat(1, 2))])
    );
}

/// The projection of the reduced word and the star-regularized value are
/// built by two different recursions (full diamond + `g` generators vs
/// merge-only stuffle + `Gamma` symbols) but must agree symbol-for-symbol
/// on divergent depth-one and depth-two indices.
#[test]
fn projection_agrees_with_star_regularization() {
    for level in [2u32, 3] {
        for (s, alpha) in [
            (vec![1u32], vec![0u32]),
            (vec![1], vec![1]),
            (vec![1, 2], vec![1, 0]),
        ] {
            let w: u32 = s.iter().sum();
            let word = Word(s.iter().copied().zip(alpha.iter().copied()).collect());
            let via_reduce = z_project(&reduce_word(level, &word).unwrap(), w).unwrap();
            let via_star = zstar_regularized(level, &s, &alpha).unwrap();
            assert_eq!(via_reduce, via_star, "[{s:?};{alpha:?}]@{level}");
        }
    }
}

#[test]
fn star_regularized_weight_one() {
    // zeta*_2(1;0) = (T + Gamma_1)/2 and zeta*_2(1;1) = (T - Gamma_1)/2.
    let g1 = gamma(2, 1, &[], &[]);
    let unit = MzvSymbol::Unit { level: 2 };
    let p0 = zstar_regularized(2, &[1], &[0]).unwrap();
    assert_eq!(p0.coeff(0), combo(2, &[(g1.clone(), rat(1, 2))]));
    assert_eq!(p0.coeff(1), combo(2, &[(unit.clone(), rat(1, 2))]));
    let p1 = zstar_regularized(2, &[1], &[1]).unwrap();
    assert_eq!(p1.coeff(0), combo(2, &[(g1, rat(-1, 2))]));
    assert_eq!(p1.coeff(1), combo(2, &[(unit, rat(1, 2))]));
}

/// The four double-one values at level 2, as printed:
/// `16 zeta*_2(1,1;b0,b1) = 2T^2 ± 4 Gamma_1 T + (rational combination of
/// Gamma_1(1;0), Gamma_1(1;1), zeta_2(2;0), zeta_2(2;1))`.
#[test]
fn star_regularized_double_ones_level2() {
    let unit = MzvSymbol::Unit { level: 2 };
    let g1 = gamma(2, 1, &[], &[]);
    let g10 = gamma(2, 1, &[1], &[0]);
    let g11 = gamma(2, 1, &[1], &[1]);
    let z20 = zeta(2, &[2], &[0]);
    let z21 = zeta(2, &[2], &[1]);
    // Rows ordered by the color vector (b0, b1): 00, 01, 10, 11.
    // Each row: (g1 T-coefficient, g10, g11, z20, z21), all over 16.
    let rows: [(i64, i64, i64, i64, i64); 4] = [
        (4, 4, -4, -6, 2),
        (-4, 4, 12, 2, -6),
        (4, -12, -4, -6, 2),
        (-4, 4, -4, 2, -6),
    ];
    let colors = [[0u32, 0], [0, 1], [1, 0], [1, 1]];
    for (c, (t1, a, b, z0, z1)) in colors.iter().zip(rows) {
        let p = zstar_regularized(2, &[1, 1], c).unwrap();
        assert_eq!(
            p.coeff(2),
            combo(2, &[(unit.clone(), rat(2, 16))]),
            "T^2 coefficient at {c:?}"
        );
        assert_eq!(
            p.coeff(1),
            combo(2, &[(g1.clone(), rat(t1, 16))]),
            "T coefficient at {c:?}"
        );
        assert_eq!(
            p.coeff(0),
            combo(
                2,
                &[
                    (g10.clone(), rat(a, 16)),
                    (g11.clone(), rat(b, 16)),
                    (z20.clone(), rat(z0, 16)),
                    (z21.clone(), rat(z1, 16)),
                ]
            ),
            "constant coefficient at {c:?}"
        );
    }
}

/// Stuffle consistency, numerically: `zeta*_2(1;0)^2 = 2 zeta*_2(1,1;0,0)
/// + zeta_2(2;0)` coefficientwise in `T`.
#[test]
fn star_square_consistency_numeric() {
    let cutoff = 20_000_000;
    let (g1, _) = gamma_numeric(2, 1, &[], &[], cutoff).unwrap();
    // Left side: ((T + g1)/2)^2.
    let lhs = [g1 * g1 / 4.0, g1 / 2.0, 0.25];
    // Right side.
    let mut rhs = zstar_regularized(2, &[1, 1], &[0, 0])
        .unwrap()
        .eval_coeffs(cutoff)
        .unwrap()
        .iter()
        .map(|(z, _)| 2.0 * z.re)
        .collect::<Vec<_>>();
    rhs[0] += zeta_numeric(2, &[2], &[0], cutoff).unwrap().0;
    for (k, (l, r)) in lhs.iter().zip(&rhs).enumerate() {
        assert!(
            (l - r).abs() < 1e-6,
            "T^{k} coefficient: {l} vs {r} (diff {:.2e})",
            (l - r).abs()
        );
    }
}

#[test]
fn weight_three_relations_level2() {
    let records = emit_relations(2, 3, 3, 100_000).unwrap();
    assert!(!records.is_empty());
    for r in &records {
        assert!(
            r.residual < 1e-3,
            "uncertified relation {r}: residual {:.2e}",
            r.residual
        );
    }
    // zeta_2(2,1;0,1) = zeta_2(2,1;1,0) + zeta_2(2,1;1,1) must be implied.
    let target = vec![
        (zeta(2, &[2, 1], &[0, 1]), rat_int(1)),
        (zeta(2, &[2, 1], &[1, 0]), rat_int(-1)),
        (zeta(2, &[2, 1], &[1, 1]), rat_int(-1)),
    ];
    assert!(
        relation_in_span(&records, &target),
        "depth-two weight-three relation not implied:\n{}",
        records
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("\n")
    );
}

#[test]
fn weight_four_relations_level2() {
    let records = emit_relations(2, 4, 3, 100_000).unwrap();
    for r in &records {
        assert!(
            r.residual < 1e-3,
            "uncertified relation {r}: residual {:.2e}",
            r.residual
        );
    }
    // zeta_2(2,2;0,1) = 2 zeta_2(3,1;1,1) + zeta_2(2,2;1,1) + 2 zeta_2(3,1;1,0).
    let depth2 = vec![
        (zeta(2, &[2, 2], &[0, 1]), rat_int(1)),
        (zeta(2, &[3, 1], &[1, 1]), rat_int(-2)),
        (zeta(2, &[2, 2], &[1, 1]), rat_int(-1)),
        (zeta(2, &[3, 1], &[1, 0]), rat_int(-2)),
    ];
    assert!(relation_in_span(&records, &depth2), "weight-four depth-two relation not implied");
    // 2 zeta_2(2,1,1;0,1,1) - 2 zeta_2(2,1,1;1,0,1) = zeta_2(2,2;1,1) - zeta_2(2,2;0,1),
    // the image of the Leibniz residue of [1;1]*[1;1].
    let depth3 = vec![
        (zeta(2, &[2, 1, 1], &[0, 1, 1]), rat_int(2)),
        (zeta(2, &[2, 1, 1], &[1, 0, 1]), rat_int(-2)),
        (zeta(2, &[2, 2], &[1, 1]), rat_int(-1)),
        (zeta(2, &[2, 2], &[0, 1]), rat_int(1)),
    ];
    assert!(relation_in_span(&records, &depth3), "Leibniz-residue relation not implied");
}

#[test]
fn relation_record_json_schema() {
    let rec = RelationRecord {
        level: 2,
        weight: 3,
        terms: vec![
            (zeta(2, &[2, 1], &[0, 1]), rat_int(1)),
            (zeta(2, &[2, 1], &[1, 0]), rat(-1, 2)),
        ],
        provenance: "D[1;1]".to_string(),
        residual: 1.0e-6,
    };
    let j = rec.to_json();
    assert_eq!(j["level"], 2);
    assert_eq!(j["weight"], 3);
    assert_eq!(j["terms"][0]["kind"], "zeta");
    assert_eq!(j["terms"][0]["s"], serde_json::json!([2, 1]));
    assert_eq!(j["terms"][0]["alpha"], serde_json::json!([0, 1]));
    assert_eq!(j["terms"][0]["coeff"], "1");
    assert_eq!(j["terms"][1]["coeff"], "-1/2");
    assert_eq!(j["provenance"], "D[1;1]");
    let res = verify_relation(&rec, 10_000).unwrap();
    assert!(res.is_finite());
}

#[test]
fn projection_rejects_unreduced_and_overweight_input() {
    use qmz::reduce::{Generator, QmzSum};
    let mut x = QmzSum::zero(2);
    x.add_term(0, &Generator::Mdf(Word(vec![(1, 1), (2, 0)])), &CycloNum::one(2));
    assert!(z_project(&x, 3).is_err(), "divergent word at top weight must be rejected");
    let mut y = QmzSum::zero(2);
    y.add_term(0, &Generator::Mdf(Word(vec![(4, 0)])), &CycloNum::one(2));
    assert!(z_project(&y, 3).is_err(), "weight above the target must be rejected");
}

/// Mined relations never involve `T` in the emitted records: each `T`-degree
/// is a separate record at its own weight. Check a lower-weight bucket shows
/// up correctly or not at all at weight 4.
#[test]
fn records_are_t_free_and_weight_tagged() {
    let records = emit_relations(2, 4, 2, 50_000).unwrap();
    for r in &records {
        assert!(r.weight <= 4 && r.weight >= 1);
        for (sym, _) in &r.terms {
            match sym {
                MzvSymbol::Zeta { s, .. } => assert_eq!(s.iter().sum::<u32>(), r.weight),
                MzvSymbol::Gamma { s, .. } => assert_eq!(1 + s.iter().sum::<u32>(), r.weight),
                MzvSymbol::Unit { .. } => assert_eq!(r.weight, 0),
            }
        }
    }
}

#[test]
fn tpolynomial_arithmetic() {
    let mut c = MzvCombo::zero(2);
    c.add_term(&MzvSymbol::Unit { level: 2 }, &CycloNum::one(2));
    let p = TPolynomial::from_combo(c.clone());
    let q = p.mul_t().add(&p);
    assert_eq!(q.degree(), 1);
    assert_eq!(q.coeff(0), c);
    assert_eq!(q.coeff(1), c);
    let z = q.add(&q.scale(&CycloNum::from_int(2, -1)));
    assert!(z.coeffs.is_empty());
}
