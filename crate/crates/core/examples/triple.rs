//! The preorders of -ln h, 1/h and h coincide.

use divorder::functions::parse_function;
use divorder::orders::{triple_equivalence, triple_equivalence_explicit};

fn main() -> divorder::Result<()> {
    for n in [6u64, 12, 30, 360] {
        let r = triple_equivalence(&parse_function("phi_over_x")?, n)?;
        println!(
            "phi/x on D_{n}: {} preorders identical = {}, {} classes",
            r.preorders.len(),
            r.identical,
            r.classes
        );
    }
    let r = triple_equivalence_explicit(
        &parse_function("log")?,
        &parse_function("id")?,
        &parse_function("recip")?,
        30,
    )?;
    for p in &r.preorders {
        println!("{:<18} {:?}", p.label, p.ranks);
    }
    let r = triple_equivalence(&parse_function("chi:6")?, 6)?;
    println!(
        "chi_6 (zero class {:?}): identical = {}, partition {:?}",
        r.zero_class, r.identical, r.partition.blocks
    );
    Ok(())
}
