//! Exact equal-value scans over [1, N].

use divorder::functions::parse_function;
use divorder::scanners::{scan_collisions, ScanMode, ScanOptions};

fn main() -> divorder::Result<()> {
    let max = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(100_000u64);
    let runs = [
        ("sigma_over_x", ScanMode::All),
        ("sigma_over_x", ScanMode::Coprime),
        ("sigma_over_x2", ScanMode::All),
        ("phi_over_x", ScanMode::All),
        ("phi_over_x2", ScanMode::Coprime),
        ("ld", ScanMode::Squarefree),
    ];
    for (name, mode) in runs {
        let opts = ScanOptions {
            pair_limit: 5,
            ..ScanOptions::mode(mode)
        };
        let r = scan_collisions(&parse_function(name)?, max, &opts)?;
        let first: Vec<String> = r
            .collisions
            .iter()
            .map(|c| format!("({},{})={}", c.x, c.y, c.value))
            .collect();
        println!(
            "{name:>14} {mode:<10} N={max}: {} pairs in {} classes [{:.2?}] {}",
            r.pair_count,
            r.groups.len(),
            r.elapsed,
            first.join(" ")
        );
    }
    Ok(())
}
