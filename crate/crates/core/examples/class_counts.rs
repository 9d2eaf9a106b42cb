//! How many classes a function in I can produce, and the squarefree transfer.

use divorder::functions::parse_function;
use divorder::orders::{class_count_checks, coprime_squarefree_transfer};

fn main() -> divorder::Result<()> {
    for (name, n) in [
        ("recip", 12u64),
        ("phi_over_x", 30),
        ("chi:30", 30),
        ("mu2", 12),
        ("one", 30),
        ("recip", 8),
    ] {
        let r = class_count_checks(&parse_function(name)?, n)?;
        let applied: Vec<String> = r
            .checks
            .iter()
            .filter(|c| c.applies)
            .map(|c| format!("{}={}", c.name, c.holds))
            .collect();
        println!(
            "{name:>11} on D_{n:<3} {} classes  {}",
            r.partition.len(),
            applied.join(" ")
        );
    }
    let h = parse_function("pow2neg:bigomega")?;
    println!("(6, 10) -> {:?}", coprime_squarefree_transfer(&h, 6, 10)?);
    println!("(30, 42) -> {:?}", coprime_squarefree_transfer(&h, 30, 42)?);
    Ok(())
}
