//! Exact arithmetic substrate: factorization, divisor sets, the
//! gcd projection onto `D_n`, and the integer partition function.
//!
//! Inputs are machine words; every derived quantity that can outgrow a
//! word (divisor sums, squares, partition counts) is carried in
//! arbitrary precision.

mod divisors;
mod factor;
mod partition;

pub use divisors::{divisor_set, gcd_u64, gcd_z, rad, DivisorSet};
pub use factor::{factorize, is_prime, Factorization, Factorizer, TrialDivision};
pub use partition::{partition_count, partition_counts};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational. `num_rational` keeps it reduced with a positive
/// denominator, so structural equality is value equality.
pub type Rat = num_rational::BigRational;

/// Build `num/den` in canonical form. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: impl Into<BigInt>) -> Rat {
    Rat::from_integer(v.into())
}

/// Parse `"p/q"`, `"p"` or `"-p/q"` into a canonical rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::MalformedRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// Render as `p/q`, or `p` for integers. Never a decimal.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn rationals_are_canonical() {
        let r = Rat::new(BigInt::from(84), BigInt::from(-36));
        assert_eq!(r.numer().gcd(r.denom()), BigInt::one());
        assert!(r.denom() > &BigInt::zero());
        assert_eq!(r, rat(-7, 3));
        assert_eq!(fmt_rat(&r), "-7/3");
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("6/10").unwrap(), rat(3, 5));
        assert_eq!(parse_rat(" 12 ").unwrap(), rat_int(12));
        assert_eq!(fmt_rat(&parse_rat("24/2").unwrap()), "12");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("0.3").is_err());
        assert!(parse_rat("a/b").is_err());
    }
}
