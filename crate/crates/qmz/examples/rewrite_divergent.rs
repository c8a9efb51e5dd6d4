//! Rewriting a function with leading exponent 1 (whose zeta limit diverges)
//! as a polynomial in the weight-one element t over the subalgebra generated
//! by convergent indices and the g_beta. The rewrite is driven by the mixing
//! matrices M(N, m), shown here for N = 2, m = 1 together with the exact
//! inverse that solves for the N^2 leading-colour combinations at once.
//!
//! Run with: cargo run --example rewrite_divergent

use qmz::linalg::invert_rational;
use qmz::reduce::{reduce_word, reg_matrix, reg_matrix_det};
use qmz::words::Word;

fn main() {
    let row_text = |row: &[qmz::rational::Rational]| -> String {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        format!("[ {} ]", cells.join(" "))
    };

    // The mixing matrix and its determinant.
    let m = reg_matrix(2, 1);
    println!("M(2,1):");
    for row in &m {
        println!("  {}", row_text(row));
    }
    println!("det M(2,1) = {}", reg_matrix_det(2, 1));
    println!("M(2,1)^-1:");
    for row in &invert_rational(&m).unwrap() {
        println!("  {}", row_text(row));
    }

    // Weight one: [1;1]@2 = (t - g_1)/2.
    let r = reduce_word(2, &Word::letter(1, 1)).unwrap();
    println!("[1;1]@2 = {r}");

    // Deeper: [1,2;0,0]@2 becomes t·[2;0] plus corrections.
    let r = reduce_word(2, &Word(vec![(1, 0), (2, 0)])).unwrap();
    println!("[1,2;0,0]@2 = {r}");

    // The rewrite is exact: it reproduces the original q-expansion.
    let order = 25;
    let original = qmz::qseries::mdf_polylog(
        &qmz::qseries::MdfIndex::new(2, vec![1, 2], vec![0, 0]).unwrap(),
        order,
    );
    assert_eq!(r.eval_to_qseries(order), original);
    println!("round trip to order {order} verified");
}
