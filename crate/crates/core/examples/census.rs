//! Partition bounds and the partitions the catalog actually realises.

use divorder::functions::catalog;
use divorder::scanners::{partition_bounds, partition_census};

fn main() -> divorder::Result<()> {
    for n in [6u64, 12, 30, 60, 360] {
        let b = partition_bounds(n)?;
        let r = partition_census(n, &catalog(&[n]))?;
        println!(
            "n = {n:>3}: p(nd-1) = {:>5}, p(Omega-1) = {:>2}, catalog gives {:>2} partitions, {:>2} profiles on D_n \\ {{1}}",
            b.p_nd, b.p_omega, r.distinct, r.distinct_shapes
        );
    }
    let r = partition_census(12, &catalog(&[12]))?;
    for p in &r.partitions {
        println!("  {:?}", p.blocks);
    }
    Ok(())
}
