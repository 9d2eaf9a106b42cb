use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{preorder_of, preorder_of_unchecked, quotient_by_preorder, DivisorPartition, Preorder};
use crate::arith::{divisor_set, factorize, fmt_rat, gcd_u64, Rat};
use crate::error::{Error, Result};
use crate::functions::{
    classify, from_prime_power_values, make_triple_on, ArithmeticFunction, ExtensionKind, ZeroClass,
};
use crate::metrics::Combinator;

/// Values of `h` on `D_n` in divisor order, as comparison keys.
fn keys_on(h: &ArithmeticFunction, index: &[u64]) -> Result<Vec<Rat>> {
    index
        .iter()
        .map(|&d| Ok(h.eval_factored(d, &factorize(d)?)?.key().clone()))
        .collect()
}

/// Partition of `D_n` by the preorder of `h` under the additive form that
/// fits its range (`AddH` below 1, `AddG` above).
fn value_partition(h: &ArithmeticFunction, n: u64) -> Result<(Preorder, DivisorPartition)> {
    let index = divisor_set(n)?.divisors;
    let one = Rat::one();
    let comb = if keys_on(h, &index)?.iter().all(|v| *v <= one) {
        Combinator::AddH
    } else {
        Combinator::AddG
    };
    let p = preorder_of_unchecked(h, comb, n)?;
    let q = quotient_by_preorder(&p);
    Ok((p, q))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationReport {
    pub n: u64,
    pub h1: String,
    pub h2: String,
    /// `(q, h(q))` for `q` in `P*_n`.
    pub prime_power_values1: Vec<(u64, String)>,
    pub prime_power_values2: Vec<(u64, String)>,
    pub partition1: DivisorPartition,
    pub partition2: DivisorPartition,
    /// `h1(x) ↦ h2(x)` is a well-defined bijection `h1(D_n) → h2(D_n)`.
    pub extension_well_defined: bool,
    pub partitions_equal: bool,
}

/// Permute the values of a multiplicative `h1` on `P*_n`, extend the
/// result multiplicatively and compare the two quotient partitions.
///
/// `perm` maps values of `h1` on `P*_n` to values of `h1` on `P*_n`;
/// values it omits stay fixed.
pub fn permutation_invariance(
    h1: &ArithmeticFunction,
    perm: &BTreeMap<Rat, Rat>,
    n: u64,
) -> Result<PermutationReport> {
    let ds = divisor_set(n)?;
    let cm = classify(h1, Some(n))?;
    if !cm.multiplicative {
        return Err(Error::Hypothesis(format!(
            "{} is not multiplicative on the divisors of {n}",
            h1.name()
        )));
    }
    let pp: Vec<(u64, Rat)> = ds
        .prime_powers
        .iter()
        .map(|&q| Ok((q, h1.eval_exact(q)?)))
        .collect::<Result<_>>()?;
    let support: BTreeSet<&Rat> = pp.iter().map(|(_, v)| v).collect();
    for (a, b) in perm {
        for v in [a, b] {
            if !support.contains(v) {
                return Err(Error::NotABijection(format!(
                    "{} is not a value of {} on the prime powers dividing {n}",
                    fmt_rat(v),
                    h1.name()
                )));
            }
        }
    }
    let image: BTreeSet<&Rat> = support.iter().map(|v| perm.get(*v).unwrap_or(v)).collect();
    if image.len() != support.len() {
        return Err(Error::NotABijection(
            "two values are sent to the same value".into(),
        ));
    }
    let permuted: BTreeMap<u64, Rat> = pp
        .iter()
        .map(|(q, v)| (*q, perm.get(v).unwrap_or(v).clone()))
        .collect();
    let h2 = from_prime_power_values(permuted.clone(), ExtensionKind::Multiplicative, n)?;

    let (_, partition1) = value_partition(h1, n)?;
    let (_, partition2) = value_partition(&h2, n)?;
    let v1 = keys_on(h1, &ds.divisors)?;
    let v2 = keys_on(&h2, &ds.divisors)?;
    let mut forward: BTreeMap<&Rat, &Rat> = BTreeMap::new();
    let mut backward: BTreeMap<&Rat, &Rat> = BTreeMap::new();
    let mut extension_well_defined = true;
    for (a, b) in v1.iter().zip(&v2) {
        if *forward.entry(a).or_insert(b) != b || *backward.entry(b).or_insert(a) != a {
            extension_well_defined = false;
        }
    }
    let show = |m: &mut dyn Iterator<Item = (u64, Rat)>| m.map(|(q, v)| (q, fmt_rat(&v))).collect();
    Ok(PermutationReport {
        n,
        h1: h1.name().to_string(),
        h2: h2.name().to_string(),
        prime_power_values1: show(&mut pp.clone().into_iter()),
        prime_power_values2: show(&mut permuted.into_iter()),
        partitions_equal: partition1 == partition2,
        partition1,
        partition2,
        extension_well_defined,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientComparison {
    pub n: u64,
    pub h1: String,
    pub h2: String,
    pub values_equal: bool,
    pub partition1: DivisorPartition,
    pub partition2: DivisorPartition,
    pub partitions_equal: bool,
}

/// Do two functions induce the same quotient of `D_n`?
pub fn compare_quotients(
    h1: &ArithmeticFunction,
    h2: &ArithmeticFunction,
    n: u64,
) -> Result<QuotientComparison> {
    let index = divisor_set(n)?.divisors;
    let values_equal = keys_on(h1, &index)? == keys_on(h2, &index)?;
    let (_, partition1) = value_partition(h1, n)?;
    let (_, partition2) = value_partition(h2, n)?;
    Ok(QuotientComparison {
        n,
        h1: h1.name().to_string(),
        h2: h2.name().to_string(),
        values_equal,
        partitions_equal: partition1 == partition2,
        partition1,
        partition2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankedPreorder {
    pub label: String,
    pub ranks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleReport {
    pub n: u64,
    pub h: String,
    pub zero_class: Option<ZeroClass>,
    pub index: Vec<u64>,
    pub preorders: Vec<RankedPreorder>,
    pub identical: bool,
    pub classes: usize,
    pub partition: DivisorPartition,
}

fn triple_report(
    h: &ArithmeticFunction,
    n: u64,
    zero_class: Option<ZeroClass>,
    ps: Vec<Preorder>,
) -> TripleReport {
    let ranked: Vec<RankedPreorder> = ps
        .iter()
        .map(|p| RankedPreorder {
            label: p.label.clone(),
            ranks: p.rank_vector(),
        })
        .collect();
    let identical = ranked.windows(2).all(|w| w[0].ranks == w[1].ranks);
    let partition = quotient_by_preorder(&ps[0]);
    TripleReport {
        n,
        h: h.name().to_string(),
        zero_class,
        index: ps[0].index.clone(),
        classes: partition.len(),
        preorders: ranked,
        identical,
        partition,
    }
}

/// Compare the preorders of `(−ln h, AddF)`, `(1/h, AddG)`, `(h, AddH)` and
/// `(h, MulH)` on `D_n`. If `h` takes the value 0 on `D_n` only the last
/// two are formed.
pub fn triple_equivalence(h: &ArithmeticFunction, n: u64) -> Result<TripleReport> {
    let cm = classify(h, Some(n))?;
    let ps = match cm.zero_class {
        Some(ZeroClass::Positive) => {
            let t = make_triple_on(h, n)?;
            vec![
                preorder_of(&t.f, Combinator::AddF, n)?,
                preorder_of(&t.g, Combinator::AddG, n)?,
                preorder_of(h, Combinator::AddH, n)?,
                preorder_of(h, Combinator::MulH, n)?,
            ]
        }
        Some(ZeroClass::Zero) => {
            vec![
                preorder_of(h, Combinator::AddH, n)?,
                preorder_of(h, Combinator::MulH, n)?,
            ]
        }
        None => {
            return Err(Error::Hypothesis(format!(
                "{} is not multiplicative with values in [0, 1] on the divisors of {n}",
                h.name()
            )))
        }
    };
    Ok(triple_report(h, n, cm.zero_class, ps))
}

/// [`triple_equivalence`] with `f` and `g` supplied by the caller.
pub fn triple_equivalence_explicit(
    f: &ArithmeticFunction,
    g: &ArithmeticFunction,
    h: &ArithmeticFunction,
    n: u64,
) -> Result<TripleReport> {
    let cm = classify(h, Some(n))?;
    let ps = vec![
        preorder_of(f, Combinator::AddF, n)?,
        preorder_of(g, Combinator::AddG, n)?,
        preorder_of(h, Combinator::AddH, n)?,
        preorder_of(h, Combinator::MulH, n)?,
    ];
    Ok(triple_report(h, n, cm.zero_class, ps))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub applies: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCountHypotheses {
    pub in_i0: bool,
    pub in_i2: bool,
    pub in_i: bool,
    pub omega_ge_2: bool,
    pub injective: bool,
    pub zero_on_prime_powers: bool,
    pub constant_one: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassCountReport {
    pub n: u64,
    pub h: String,
    pub hypotheses: ClassCountHypotheses,
    pub partition: DivisorPartition,
    pub checks: Vec<LemmaCheck>,
}

impl ClassCountReport {
    /// Every conclusion whose hypotheses hold is true.
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| !c.applies || c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Evaluate the class-count lemmas for the value partition of `h` on `D_n`.
pub fn class_count_checks(h: &ArithmeticFunction, n: u64) -> Result<ClassCountReport> {
    let ds = divisor_set(n)?;
    let cm = classify(h, Some(n))?;
    let vals = keys_on(h, &ds.divisors)?;
    let mut groups: BTreeMap<&Rat, Vec<u64>> = BTreeMap::new();
    for (d, v) in ds.divisors.iter().zip(&vals) {
        groups.entry(v).or_default().push(*d);
    }
    let partition = DivisorPartition::new(n, groups.into_values().collect());
    let hyp = ClassCountHypotheses {
        in_i0: cm.i0,
        in_i2: cm.i2,
        in_i: cm.i,
        omega_ge_2: ds.primes().count() >= 2,
        injective: partition.is_discrete(),
        zero_on_prime_powers: ds
            .prime_powers
            .iter()
            .all(|q| vals[ds.index_of(*q).expect("prime power divides n")].is_zero()),
        constant_one: vals.iter().all(|v| v.is_one()),
    };
    let not_all_equal = vals[1..].iter().any(|v| *v != vals[1]);
    let checks = vec![
        LemmaCheck {
            name: "one_isolated",
            applies: hyp.in_i2,
            holds: partition.blocks[0] == [1],
        },
        LemmaCheck {
            name: "values_not_all_equal",
            applies: hyp.in_i && hyp.omega_ge_2,
            holds: not_all_equal,
        },
        LemmaCheck {
            name: "at_least_three_classes",
            applies: hyp.in_i && hyp.omega_ge_2,
            holds: partition.len() >= 3,
        },
        LemmaCheck {
            name: "finest",
            applies: hyp.injective,
            holds: partition.is_discrete(),
        },
        LemmaCheck {
            name: "two_classes_when_zero",
            applies: hyp.in_i0 && hyp.zero_on_prime_powers,
            holds: partition.len() == 2 && partition.blocks[0] == [1],
        },
        LemmaCheck {
            name: "single_class_when_one",
            applies: hyp.constant_one,
            holds: partition.len() == 1,
        },
    ];
    Ok(ClassCountReport {
        n,
        h: h.name().to_string(),
        hypotheses: hyp,
        partition,
        checks,
    })
}

/// From squarefree `s ≠ t` with `h(s) = h(t)`, return the coprime pair
/// `(s/g, t/g)`, `g = gcd(s, t)`, which shares the value.
pub fn coprime_squarefree_transfer(h: &ArithmeticFunction, s: u64, t: u64) -> Result<(u64, u64)> {
    if s == t {
        return Err(Error::Hypothesis(format!(
            "s and t must differ, both are {s}"
        )));
    }
    for x in [s, t] {
        if !factorize(x)?.is_squarefree() {
            return Err(Error::Hypothesis(format!("{x} is not squarefree")));
        }
    }
    let l = s.lcm(&t);
    let multiplicative =
        h.declared_class().is_multiplicative() || (l >= 2 && classify(h, Some(l))?.multiplicative);
    if !multiplicative {
        return Err(Error::Hypothesis(format!(
            "{} is not multiplicative",
            h.name()
        )));
    }
    let (hs, ht) = (h.eval_exact(s)?, h.eval_exact(t)?);
    if hs != ht {
        return Err(Error::Hypothesis(format!(
            "{}({s}) = {} differs from {}({t}) = {}",
            h.name(),
            fmt_rat(&hs),
            h.name(),
            fmt_rat(&ht)
        )));
    }
    let g = gcd_u64(s, t);
    if h.eval_exact(g)?.is_zero() {
        return Err(Error::Hypothesis(format!("{}({g}) = 0", h.name())));
    }
    let (a, b) = (s / g, t / g);
    if h.eval_exact(a)? != h.eval_exact(b)? {
        return Err(Error::Hypothesis(format!(
            "{} is not multiplicative at {s}, {t}",
            h.name()
        )));
    }
    Ok((a, b))
}
