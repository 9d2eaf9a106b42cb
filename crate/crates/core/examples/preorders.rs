//! Induced preorders, including order-key functions, and comparisons on Z.

use divorder::functions::parse_function;
use divorder::metrics::{Combinator, PseudometricSpec};
use divorder::orders::{induced_preorder, preorder_of};

fn main() -> divorder::Result<()> {
    let s = PseudometricSpec::new(parse_function("recip")?, Combinator::AddH, 12)?;
    let p = induced_preorder(&s);
    println!("{}", serde_json::to_string(&p.to_json())?);
    println!(
        "8 vs 9: {:?}; 5 vs 17: {:?}",
        p.compare_extended(8, 9),
        p.compare_extended(5, 17)
    );

    // log x has no exact values; its order key still induces a preorder.
    let q = preorder_of(&parse_function("log")?, Combinator::AddF, 12)?;
    println!(
        "log x ranks {:?}, 1/x ranks {:?}",
        q.rank_vector(),
        p.rank_vector()
    );
    Ok(())
}
