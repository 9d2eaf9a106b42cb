//! Distance tables on D_n in every output format, plus sums and scaling.

use divorder::arith::rat;
use divorder::functions::parse_function;
use divorder::metrics::{build_table, combine_sum, scale, Combinator, PseudometricSpec};

fn main() -> divorder::Result<()> {
    let h = PseudometricSpec::new(parse_function("recip")?, Combinator::MulH, 6)?;
    let t = build_table(&h);
    print!("{}", t.to_text());
    print!("{}", t.to_csv());
    println!("{}", serde_json::to_string(&t.to_json())?);

    // Distances between integers go through gcd(x, 6).
    println!(
        "d(2, 8) = {}, d(5, 9) = {}",
        h.distance(2, 8),
        h.distance(5, 9)
    );

    let f = build_table(&PseudometricSpec::new(
        parse_function("bigomega")?,
        Combinator::AddF,
        6,
    )?);
    let sum = combine_sum(&t, &f)?;
    print!("{}", scale(&rat(1, 2), &sum)?.to_text());
    Ok(())
}
