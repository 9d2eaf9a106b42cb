use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{ArithmeticFunction, Transform, Value, ValueRange};
use crate::arith::{divisor_set, factorize, gcd_u64, DivisorSet, Factorization, Rat};
use crate::error::{Error, Result};

/// Where class flags come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Declared metadata, valid for all arguments.
    Catalog,
    /// Exhaustively verified on the divisors of `n`.
    DivisorsOf(u64),
}

/// `I^(n)_{>0}` versus `I^(n)_{=0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroClass {
    Positive,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassMembership {
    pub scope: Scope,
    pub additive: bool,
    pub multiplicative: bool,
    pub range: ValueRange,
    pub s0: bool,
    pub s: bool,
    pub a0: bool,
    pub a: bool,
    pub m0: bool,
    pub m: bool,
    pub i0: bool,
    pub i1: bool,
    pub i2: bool,
    pub i: bool,
    /// Only with a divisor scope and only for members of `I0`.
    pub zero_class: Option<ZeroClass>,
}

impl ClassMembership {
    fn from_parts(
        scope: Scope,
        additive: bool,
        multiplicative: bool,
        at_one: PointInfo,
        r: ValueRange,
    ) -> Self {
        let s0 = at_one.cmp0 == Ordering::Equal && r.nonneg;
        let i0 = multiplicative && r.nonneg && r.le_one;
        ClassMembership {
            scope,
            additive,
            multiplicative,
            range: r,
            s0,
            s: s0 && r.pos,
            a0: additive && r.nonneg,
            a: additive && r.pos,
            m0: multiplicative && r.ge_one,
            m: multiplicative && r.gt_one,
            i0,
            i1: i0 && r.pos,
            i2: i0 && r.lt_one,
            i: i0 && r.pos && r.lt_one,
            zero_class: None,
        }
    }

    /// Names of the classes held, strongest first within each family.
    pub fn labels(&self) -> Vec<&'static str> {
        let pairs = [
            (self.s0, "S0"),
            (self.s, "S"),
            (self.a0, "A0"),
            (self.a, "A"),
            (self.m0, "M0"),
            (self.m, "M"),
            (self.i0, "I0"),
            (self.i1, "I1"),
            (self.i2, "I2"),
            (self.i, "I"),
        ];
        pairs.iter().filter(|p| p.0).map(|p| p.1).collect()
    }
}

/// How the real value at one point compares with 0 and with 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointInfo {
    pub cmp0: Ordering,
    pub cmp1: Ordering,
}

impl PointInfo {
    fn of(r: &Rat) -> Self {
        PointInfo {
            cmp0: r.cmp(&Rat::zero()),
            cmp1: r.cmp(&Rat::one()),
        }
    }
}

/// Exact comparison of a rational with Euler's number, by walking the
/// continued fraction `e = [2; 1, 2, 1, 1, 4, 1, 1, 6, ...]`.
pub fn cmp_with_e(r: &Rat) -> Ordering {
    if !r.is_positive() {
        return Ordering::Less;
    }
    let e_term = |i: usize| -> BigInt {
        match i {
            0 => BigInt::from(2),
            _ if i % 3 == 2 => BigInt::from(2 * (i + 1) / 3),
            _ => BigInt::one(),
        }
    };
    // Orientation flips with each level of the expansion.
    let at_depth = |i: usize, r_smaller: bool| match (i % 2 == 0, r_smaller) {
        (true, true) | (false, false) => Ordering::Less,
        _ => Ordering::Greater,
    };
    let (mut p, mut q) = (r.numer().clone(), r.denom().clone());
    for i in 0.. {
        let (a, rem) = p.div_mod_floor(&q);
        let t = e_term(i);
        if a != t {
            return at_depth(i, a < t);
        }
        if rem.is_zero() {
            // r stops here; e's complete quotient exceeds the shared term.
            return at_depth(i, true);
        }
        (p, q) = (q, rem);
    }
    unreachable!()
}

fn point_info(f: &ArithmeticFunction, x: u64, fac: &Factorization) -> Result<PointInfo> {
    if let Some((t, inner)) = f.as_transform().filter(|(t, _)| t.is_order_key()) {
        let v = inner.exact_factored(x, fac)?;
        let undefined = || Error::NotInDomain {
            function: f.name().to_string(),
            x,
        };
        return Ok(match t {
            Transform::Exp => PointInfo {
                cmp0: Ordering::Greater,
                cmp1: v.cmp(&Rat::zero()),
            },
            Transform::ExpNeg => PointInfo {
                cmp0: Ordering::Greater,
                cmp1: Rat::zero().cmp(&v),
            },
            Transform::Log => {
                if !v.is_positive() {
                    return Err(undefined());
                }
                PointInfo {
                    cmp0: v.cmp(&Rat::one()),
                    cmp1: cmp_with_e(&v),
                }
            }
            Transform::NegLog => {
                if !v.is_positive() {
                    return Err(undefined());
                }
                PointInfo {
                    cmp0: Rat::one().cmp(&v),
                    cmp1: cmp_with_e(&v.recip()),
                }
            }
            Transform::Inv | Transform::Pow2Neg => unreachable!("exact transforms"),
        });
    }
    match f.eval_factored(x, fac)? {
        Value::Exact(r) => Ok(PointInfo::of(&r)),
        Value::OrderKey(..) => Err(Error::Invalid(format!(
            "{} yields order keys of unknown shape; its range cannot be checked",
            f.name()
        ))),
    }
}

fn range_from_points(points: &[PointInfo]) -> ValueRange {
    use Ordering::*;
    let all = |p: &dyn Fn(&PointInfo) -> bool| points.iter().all(p);
    ValueRange {
        nonneg: all(&|p| p.cmp0 != Less),
        pos: all(&|p| p.cmp0 == Greater),
        ge_one: all(&|p| p.cmp1 != Less),
        gt_one: all(&|p| p.cmp1 == Greater),
        le_one: all(&|p| p.cmp1 != Greater),
        lt_one: all(&|p| p.cmp1 == Less),
    }
}

enum Law {
    Additive,
    Multiplicative,
}

/// Check a law on the coprime pairs of `D_n` given values indexed like
/// `ds.divisors`.
fn law_holds(ds: &DivisorSet, vals: &[Rat], law: Law) -> bool {
    let unit_ok = match law {
        Law::Additive => vals[0].is_zero(),
        Law::Multiplicative => vals[0].is_one(),
    };
    if !unit_ok {
        return false;
    }
    let d = &ds.divisors;
    for i in 1..d.len() {
        for j in i + 1..d.len() {
            if gcd_u64(d[i], d[j]) != 1 {
                continue;
            }
            let k = ds
                .index_of(d[i] * d[j])
                .expect("coprime divisors multiply into D_n");
            let ok = match law {
                Law::Additive => vals[k] == &vals[i] + &vals[j],
                Law::Multiplicative => vals[k] == &vals[i] * &vals[j],
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Class membership. Without `n` the flags come from declared metadata;
/// with `n` every defining condition is checked exhaustively on `D_n`.
pub fn classify(f: &ArithmeticFunction, n: Option<u64>) -> Result<ClassMembership> {
    let one = Factorization::from_pairs(Vec::new());
    let at_one = point_info(f, 1, &one)?;
    let Some(n) = n else {
        let c = f.declared_class();
        return Ok(ClassMembership::from_parts(
            Scope::Catalog,
            c.is_additive(),
            c.is_multiplicative(),
            at_one,
            f.declared_range(),
        ));
    };
    if n < 2 {
        return Err(Error::OutOfDomain { min: 2, got: n });
    }
    let ds = divisor_set(n)?;
    let facs: Vec<Factorization> = ds
        .divisors
        .iter()
        .map(|&d| factorize(d))
        .collect::<Result<_>>()?;
    let points: Vec<PointInfo> = ds
        .divisors
        .iter()
        .zip(&facs)
        .skip(1)
        .map(|(&d, fac)| point_info(f, d, fac))
        .collect::<Result<_>>()?;
    let range = range_from_points(&points);

    let exact_vals = |g: &ArithmeticFunction| -> Result<Vec<Rat>> {
        ds.divisors
            .iter()
            .zip(&facs)
            .map(|(&d, fac)| g.exact_factored(d, fac))
            .collect()
    };
    let (additive, multiplicative) = match f.as_transform() {
        Some((Transform::Exp | Transform::ExpNeg, inner)) => {
            (false, law_holds(&ds, &exact_vals(inner)?, Law::Additive))
        }
        Some((Transform::Log | Transform::NegLog, inner)) => (
            law_holds(&ds, &exact_vals(inner)?, Law::Multiplicative),
            false,
        ),
        _ if f.is_order_key() => {
            return Err(Error::Invalid(format!(
                "cannot verify laws for order-key function {}",
                f.name()
            )))
        }
        _ => {
            let v = exact_vals(f)?;
            (
                law_holds(&ds, &v, Law::Additive),
                law_holds(&ds, &v, Law::Multiplicative),
            )
        }
    };
    let mut cm = ClassMembership::from_parts(
        Scope::DivisorsOf(n),
        additive,
        multiplicative,
        at_one,
        range,
    );
    if cm.i0 {
        cm.zero_class = Some(if range.pos {
            ZeroClass::Positive
        } else {
            ZeroClass::Zero
        });
    }
    Ok(cm)
}
