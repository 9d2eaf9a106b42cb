use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{ArithmeticFunction, ValueRange};
use crate::arith::{divisor_set, fmt_rat, Factorization, Rat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionKind {
    Multiplicative,
    Additive,
}

/// A function fixed by its values on `P*_n` and extended over `D_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerDef {
    pub n: u64,
    pub kind: ExtensionKind,
    pub values: BTreeMap<u64, Rat>,
}

impl PrimePowerDef {
    pub(super) fn eval(&self, x: u64, fac: &Factorization, name: &str) -> Result<Rat> {
        if x == 0 || self.n % x != 0 {
            return Err(Error::NotInDomain {
                function: name.to_string(),
                x,
            });
        }
        let local = |(p, a): (u64, u32)| &self.values[&p.pow(a)];
        Ok(match self.kind {
            ExtensionKind::Multiplicative => {
                fac.iter().map(local).fold(Rat::one(), |acc, v| acc * v)
            }
            ExtensionKind::Additive => fac.iter().map(local).fold(Rat::zero(), |acc, v| acc + v),
        })
    }

    pub(super) fn meta(&self) -> (super::DeclaredClass, ValueRange) {
        let all = |p: &dyn Fn(&Rat) -> bool| self.values.values().all(p);
        let (zero, one) = (Rat::zero(), Rat::one());
        let range = ValueRange {
            nonneg: all(&|v| *v >= zero),
            pos: all(&|v| *v > zero),
            ge_one: all(&|v| *v >= one),
            gt_one: all(&|v| *v > one),
            le_one: self.kind == ExtensionKind::Multiplicative && all(&|v| *v <= one && *v >= zero),
            lt_one: self.kind == ExtensionKind::Multiplicative && all(&|v| *v < one && *v >= zero),
        };
        let class = match self.kind {
            ExtensionKind::Multiplicative => super::DeclaredClass::Multiplicative,
            ExtensionKind::Additive => super::DeclaredClass::Additive,
        };
        (class, range)
    }
}

/// Extend values given on `P*_n` multiplicatively or additively over `D_n`.
/// Multiplicative values must lie all in `[0, 1]` or all in `[1, ∞)`;
/// additive values must be non-negative.
pub fn from_prime_power_values(
    values: BTreeMap<u64, Rat>,
    kind: ExtensionKind,
    n: u64,
) -> Result<ArithmeticFunction> {
    let ds = divisor_set(n)?;
    for &k in values.keys() {
        if ds.prime_powers.binary_search(&k).is_err() {
            return Err(Error::Invalid(format!(
                "{k} is not a prime power dividing {n}"
            )));
        }
    }
    if let Some(&missing) = ds.prime_powers.iter().find(|q| !values.contains_key(q)) {
        return Err(Error::MissingPrimePower(missing));
    }
    let (zero, one) = (Rat::zero(), Rat::one());
    let ok = match kind {
        ExtensionKind::Multiplicative => {
            values.values().all(|v| *v >= zero && *v <= one) || values.values().all(|v| *v >= one)
        }
        ExtensionKind::Additive => values.values().all(|v| *v >= zero),
    };
    if !ok {
        let shown: Vec<String> = values
            .iter()
            .map(|(k, v)| format!("{k}={}", fmt_rat(v)))
            .collect();
        return Err(Error::RangeViolation(format!(
            "{kind:?} extension on P*_{n} needs {}: got {}",
            if kind == ExtensionKind::Additive {
                "values >= 0"
            } else {
                "all values in [0,1] or all >= 1"
            },
            shown.join(", ")
        )));
    }
    let shown: Vec<String> = values
        .iter()
        .map(|(k, v)| format!("{k}={}", fmt_rat(v)))
        .collect();
    let tag = match kind {
        ExtensionKind::Multiplicative => "mul",
        ExtensionKind::Additive => "add",
    };
    let name = format!("pp{n}{tag}[{}]", shown.join(","));
    Ok(ArithmeticFunction::from_prime_power_def(
        name,
        PrimePowerDef { n, kind, values },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn map(pairs: &[(u64, Rat)]) -> BTreeMap<u64, Rat> {
        pairs.iter().cloned().collect()
    }

    #[test]
    fn twelve_example() {
        let h = from_prime_power_values(
            map(&[(2, rat(1, 2)), (3, rat(3, 5)), (4, rat(3, 10))]),
            ExtensionKind::Multiplicative,
            12,
        )
        .unwrap();
        assert_eq!(h.eval_exact(6).unwrap(), rat(3, 10));
        assert_eq!(h.eval_exact(4).unwrap(), rat(3, 10));
        assert_eq!(h.eval_exact(12).unwrap(), rat(9, 50));
        assert_eq!(h.eval_exact(1).unwrap(), rat(1, 1));
        assert!(matches!(h.eval_exact(5), Err(Error::NotInDomain { .. })));
        assert!(matches!(h.eval_exact(24), Err(Error::NotInDomain { .. })));
    }

    #[test]
    fn six_example() {
        let h = from_prime_power_values(
            map(&[(2, rat(3, 10)), (3, rat(6, 10))]),
            ExtensionKind::Multiplicative,
            6,
        )
        .unwrap();
        assert_eq!(h.eval_exact(6).unwrap(), rat(18, 100));
    }

    #[test]
    fn additive_zero_values() {
        let f = from_prime_power_values(
            map(&[
                (2, rat(0, 1)),
                (4, rat(0, 1)),
                (8, rat(0, 1)),
                (3, rat(0, 1)),
            ]),
            ExtensionKind::Additive,
            24,
        )
        .unwrap();
        for d in [1, 2, 3, 4, 6, 8, 12, 24] {
            assert_eq!(f.eval_exact(d).unwrap(), rat(0, 1));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let mul = ExtensionKind::Multiplicative;
        assert_eq!(
            from_prime_power_values(map(&[(2, rat(1, 2)), (3, rat(1, 2))]), mul, 12).unwrap_err(),
            Error::MissingPrimePower(4)
        );
        assert!(matches!(
            from_prime_power_values(
                map(&[(2, rat(1, 2)), (3, rat(1, 2)), (6, rat(1, 2))]),
                mul,
                6
            ),
            Err(Error::Invalid(_))
        ));
        assert!(matches!(
            from_prime_power_values(map(&[(2, rat(1, 2)), (3, rat(3, 2))]), mul, 6),
            Err(Error::RangeViolation(_))
        ));
        assert!(matches!(
            from_prime_power_values(
                map(&[(2, rat(-1, 2)), (3, rat(1, 2))]),
                ExtensionKind::Additive,
                6
            ),
            Err(Error::RangeViolation(_))
        ));
    }
}
