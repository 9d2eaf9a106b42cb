//! Declared classes versus classes checked on the divisors of n.

use divorder::functions::{classify, parse_function};

fn main() -> divorder::Result<()> {
    for name in [
        "bigomega",
        "x_minus_1",
        "sigma",
        "recip",
        "phi_over_x",
        "mu2",
        "chi:12",
        "neglog:recip",
        "one",
    ] {
        let f = parse_function(name)?;
        let declared = classify(&f, None)?;
        let on12 = classify(&f, Some(12))?;
        println!(
            "{name:>14}  declared {:<28} on D_12 {:<28} zero class {:?}",
            declared.labels().join(","),
            on12.labels().join(","),
            on12.zero_class
        );
    }
    Ok(())
}
