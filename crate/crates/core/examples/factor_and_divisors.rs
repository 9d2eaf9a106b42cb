//! Factorizations, divisor sets and partition counts.

use divorder::arith::{divisor_set, factorize, partition_count, rad};

fn main() -> divorder::Result<()> {
    for n in [12u64, 360, 5040, 600_851_475_143] {
        let fac = factorize(n)?;
        let parts: Vec<String> = fac
            .iter()
            .map(|(p, e)| {
                if e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        println!(
            "{n} = {}  (Omega = {}, omega = {}, rad = {})",
            parts.join(" * "),
            fac.big_omega(),
            fac.omega(),
            rad(n)?
        );
    }
    let ds = divisor_set(360)?;
    println!(
        "D_360 has {} divisors; P*_360 = {:?}",
        ds.len(),
        ds.prime_powers
    );
    for k in [5u64, 23, 100] {
        println!("p({k}) = {}", partition_count(k));
    }
    Ok(())
}
