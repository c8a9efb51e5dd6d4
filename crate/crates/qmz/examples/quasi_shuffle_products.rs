//! The quasi-shuffle (stuffle) product on colored words and the fact that
//! evaluation to q-series is an algebra homomorphism: the formal product of
//! two indices expands to a combination of indices whose series equals the
//! series product.
//!
//! Run with: cargo run --example quasi_shuffle_products

use qmz::qseries::{mdf_polylog, MdfIndex};
use qmz::words::{stuffle_words, Word};

fn main() {
    let order = 30;
    for (level, (a, alpha), (b, beta)) in [
        (2, (1, 1), (1, 0)),
        (2, (2, 1), (1, 1)),
        (3, (2, 1), (1, 2)),
        (4, (1, 1), (2, 3)),
    ] {
        let w = Word::letter(a, alpha);
        let v = Word::letter(b, beta);
        let product = stuffle_words(level, &w, &v).unwrap();
        println!("N={level}:  [{a};{alpha}] * [{b};{beta}] = {product}");

        // Homomorphism check as exact truncated q-series.
        let lhs = product.eval_to_qseries(order);
        let wi = MdfIndex::new(level, vec![a], vec![alpha]).unwrap();
        let vi = MdfIndex::new(level, vec![b], vec![beta]).unwrap();
        let rhs = mdf_polylog(&wi, order).mul(&mdf_polylog(&vi, order));
        assert_eq!(lhs, rhs, "expansion disagrees with the series product");
    }
    println!("all products verified as q-series identities to order 30");
}
