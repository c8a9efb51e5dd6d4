//! The derivation q d/dq maps the span of multiple divisor functions into
//! itself; `derive_index` gives the image in closed form, and applying
//! q d/dq coefficientwise to the q-expansion recovers the same series.
//!
//! Run with: cargo run --example q_derivation

use qmz::derive::derive_index;
use qmz::qseries::{mdf_polylog, q_derive, MdfIndex};

fn main() {
    let order = 25;
    for (level, s, alpha) in [
        (2, vec![1], vec![1]),
        (2, vec![2], vec![1]),
        (2, vec![2, 1], vec![0, 1]),
        (3, vec![1], vec![2]),
    ] {
        let idx = MdfIndex::new(level, s, alpha).unwrap();
        let image = derive_index(&idx).unwrap();
        println!("D{idx} = {image}");

        let direct = q_derive(&mdf_polylog(&idx, order));
        assert_eq!(
            image.eval_to_qseries(order),
            direct,
            "closed-form image disagrees with the coefficientwise derivative"
        );
    }
    println!("all images verified against q d/dq to order 25");
}
