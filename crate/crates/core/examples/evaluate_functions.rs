//! Evaluate catalog functions, combinations and functions given on prime powers.

use std::collections::BTreeMap;

use divorder::arith::{fmt_rat, rat};
use divorder::functions::{from_prime_power_values, parse_function, ExtensionKind};

fn main() -> divorder::Result<()> {
    for name in [
        "sigma",
        "phi",
        "nd",
        "pillai",
        "ld",
        "deriv",
        "sigma_over_x",
        "pow2neg:bigomega",
        "log",
        "chi:6",
    ] {
        let f = parse_function(name)?;
        let vals: Vec<String> = (1..=12)
            .map(|x| f.evaluate(x).map(|v| v.to_string()))
            .collect::<Result<_, _>>()?;
        println!("{name:>18}: {}", vals.join(" "));
    }

    // Pointwise combinations.
    let f = parse_function("bigomega+omega")?;
    let g = parse_function("sigma*phi")?;
    println!(
        "(Omega+omega)(360) = {}, (sigma*phi)(10) = {}",
        f.evaluate(360)?,
        g.evaluate(10)?
    );

    // h fixed on P*_12 and extended multiplicatively.
    let values: BTreeMap<u64, _> = [(2, rat(1, 2)), (3, rat(3, 5)), (4, rat(3, 10))]
        .into_iter()
        .collect();
    let h = from_prime_power_values(values, ExtensionKind::Multiplicative, 12)?;
    for d in [1, 2, 3, 4, 6, 12] {
        println!("{}({d}) = {}", h.name(), fmt_rat(&h.eval_exact(d)?));
    }
    Ok(())
}
