//! Multiply perfect numbers from a sigma sieve.

use divorder::scanners::scan_multiperfect;

fn main() -> divorder::Result<()> {
    let max = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000u64);
    let r = scan_multiperfect(max)?;
    for h in &r.hits {
        println!("sigma({}) = {} * {}", h.x, h.k, h.x);
    }
    println!("all even: {}", r.all_even);
    Ok(())
}
