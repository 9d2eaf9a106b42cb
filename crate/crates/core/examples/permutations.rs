//! Permuting prime-power values, and when that changes the partition.

use std::collections::BTreeMap;

use divorder::arith::{rat, Rat};
use divorder::functions::{from_prime_power_values, ExtensionKind};
use divorder::orders::{compare_quotients, permutation_invariance};

fn main() -> divorder::Result<()> {
    let mul = ExtensionKind::Multiplicative;
    let h1 = from_prime_power_values(
        [(2, rat(3, 10)), (3, rat(6, 10))].into_iter().collect(),
        mul,
        6,
    )?;
    let h2 = from_prime_power_values(
        [(2, rat(2, 10)), (3, rat(5, 10))].into_iter().collect(),
        mul,
        6,
    )?;
    let c = compare_quotients(&h1, &h2, 6)?;
    println!(
        "n = 6: values equal {}, partitions equal {}",
        c.values_equal, c.partitions_equal
    );

    let h = from_prime_power_values(
        [(2, rat(1, 2)), (3, rat(3, 5)), (4, rat(3, 10))]
            .into_iter()
            .collect(),
        mul,
        12,
    )?;
    let swaps: [(Rat, Rat); 2] = [(rat(1, 2), rat(3, 5)), (rat(1, 2), rat(3, 10))];
    for (a, b) in swaps {
        let perm: BTreeMap<Rat, Rat> = [(a.clone(), b.clone()), (b, a)].into_iter().collect();
        let r = permutation_invariance(&h, &perm, 12)?;
        println!(
            "{:?} -> {:?}: well defined {}, partitions {:?} vs {:?}",
            r.prime_power_values1,
            r.prime_power_values2,
            r.extension_well_defined,
            r.partition1.blocks,
            r.partition2.blocks
        );
    }
    Ok(())
}
