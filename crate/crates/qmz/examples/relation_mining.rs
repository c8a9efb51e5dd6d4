//! Mining Q-linear relations among multiple zeta values at level N: the
//! derivation maps the algebra into itself but the zeta projection kills
//! derivative images, so every projected image of D is a relation. Rows are
//! deduplicated by exact Gaussian elimination over Q and certified
//! numerically before being returned.
//!
//! Run with: cargo run --example relation_mining

use qmz::relations::emit_relations;

fn main() {
    // Weight 3 at level 2, certificates summed to 10^5 terms.
    let records = emit_relations(2, 3, 3, 100_000).unwrap();
    println!("weight 3, level 2: {} independent relations", records.len());
    for r in &records {
        println!("  {r}");
    }

    // Weight 4 adds Leibniz-rule residues of letter pairs as sources.
    let records = emit_relations(2, 4, 3, 100_000).unwrap();
    println!("weight 4, level 2: {} independent relations", records.len());
    for r in &records {
        println!("  {r}");
    }

    for r in emit_relations(2, 3, 3, 100_000).unwrap() {
        assert!(r.residual < 1e-3, "certificate failed: {r}");
    }
}
