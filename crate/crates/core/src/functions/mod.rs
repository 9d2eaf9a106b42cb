//! Arithmetic functions with exact values, their admissibility classes,
//! and the constructions that combine them.

mod catalog;
mod classify;
mod prime_power;
mod spec;

pub use catalog::{catalog, Builtin, CATALOG_NAMES};
pub use classify::{classify, cmp_with_e, ClassMembership, PointInfo, Scope, ZeroClass};
pub use prime_power::{from_prime_power_values, ExtensionKind, PrimePowerDef};
pub use spec::{parse_function, FunctionSpec, PrimePowerSpec};

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{factorize, fmt_rat, Factorization, Rat};
use crate::error::{Error, Result};

/// A function value. `OrderKey` carries a rational surrogate that is a
/// strictly increasing transform of an irrational true value; it can be
/// compared with keys of the same function but never added or multiplied.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Exact(Rat),
    OrderKey(Rat, Arc<str>),
}

impl Value {
    /// The comparison key: the value itself, or the surrogate.
    pub fn key(&self) -> &Rat {
        match self {
            Value::Exact(r) | Value::OrderKey(r, _) => r,
        }
    }

    pub fn as_exact(&self) -> Option<&Rat> {
        match self {
            Value::Exact(r) => Some(r),
            Value::OrderKey(..) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => f.write_str(&fmt_rat(r)),
            Value::OrderKey(r, label) => write!(f, "order-key({}) = {}", label, fmt_rat(r)),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Exact(r) => s.serialize_str(&fmt_rat(r)),
            Value::OrderKey(r, label) => {
                let mut st = s.serialize_struct("OrderKey", 2)?;
                st.serialize_field("order_key", &fmt_rat(r))?;
                st.serialize_field("label", &**label)?;
                st.end()
            }
        }
    }
}

/// Structural class a function declares for itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeclaredClass {
    Additive,
    TotallyAdditive,
    Multiplicative,
    TotallyMultiplicative,
    Neither,
}

impl DeclaredClass {
    pub fn is_additive(self) -> bool {
        matches!(
            self,
            DeclaredClass::Additive | DeclaredClass::TotallyAdditive
        )
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(
            self,
            DeclaredClass::Multiplicative | DeclaredClass::TotallyMultiplicative
        )
    }

    pub fn is_total(self) -> bool {
        matches!(
            self,
            DeclaredClass::TotallyAdditive | DeclaredClass::TotallyMultiplicative
        )
    }

    fn join(
        self,
        other: DeclaredClass,
        total: DeclaredClass,
        partial: DeclaredClass,
    ) -> DeclaredClass {
        if self.is_total() && other.is_total() {
            total
        } else {
            partial
        }
    }
}

/// Bounds a function obeys for every argument `x > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct ValueRange {
    pub nonneg: bool,
    pub pos: bool,
    pub ge_one: bool,
    pub gt_one: bool,
    pub le_one: bool,
    pub lt_one: bool,
}

impl ValueRange {
    pub const NONE: ValueRange = ValueRange {
        nonneg: false,
        pos: false,
        ge_one: false,
        gt_one: false,
        le_one: false,
        lt_one: false,
    };
    pub const NONNEG: ValueRange = ValueRange {
        nonneg: true,
        ..Self::NONE
    };
    pub const POS: ValueRange = ValueRange {
        pos: true,
        ..Self::NONNEG
    };
    pub const GE_ONE: ValueRange = ValueRange {
        ge_one: true,
        ..Self::POS
    };
    pub const GT_ONE: ValueRange = ValueRange {
        gt_one: true,
        ..Self::GE_ONE
    };
    /// `[0, 1]`
    pub const UNIT: ValueRange = ValueRange {
        le_one: true,
        ..Self::NONNEG
    };
    /// `[0, 1)`
    pub const UNIT_LT: ValueRange = ValueRange {
        lt_one: true,
        ..Self::UNIT
    };
    /// `(0, 1]`
    pub const UNIT_POS: ValueRange = ValueRange {
        pos: true,
        ..Self::UNIT
    };
    /// `(0, 1)`
    pub const OPEN_UNIT: ValueRange = ValueRange {
        lt_one: true,
        ..Self::UNIT_POS
    };
    /// Exactly 1.
    pub const ONE: ValueRange = ValueRange {
        ge_one: true,
        ..Self::UNIT_POS
    };

    fn sum(a: ValueRange, b: ValueRange) -> ValueRange {
        let nonneg = a.nonneg && b.nonneg;
        let ge_one = (a.ge_one && b.nonneg) || (b.ge_one && a.nonneg);
        ValueRange {
            nonneg,
            pos: nonneg && (a.pos || b.pos),
            ge_one,
            gt_one: (a.gt_one && b.nonneg)
                || (b.gt_one && a.nonneg)
                || (a.ge_one && b.pos)
                || (b.ge_one && a.pos),
            le_one: false,
            lt_one: false,
        }
    }

    fn product(a: ValueRange, b: ValueRange) -> ValueRange {
        let ge_one = a.ge_one && b.ge_one;
        let le_one = a.nonneg && b.nonneg && a.le_one && b.le_one;
        ValueRange {
            nonneg: a.nonneg && b.nonneg,
            pos: a.pos && b.pos,
            ge_one,
            gt_one: ge_one && (a.gt_one || b.gt_one),
            le_one,
            lt_one: le_one && (a.lt_one || b.lt_one),
        }
    }
}

/// Unary transforms. The first four yield order keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transform {
    /// `e^f`, keyed by `f`.
    Exp,
    /// `e^{-f}`, keyed by `-f`.
    ExpNeg,
    /// `ln g`, keyed by `g`.
    Log,
    /// `-ln h`, keyed by `1/h`.
    NegLog,
    /// `1/g`, exact.
    Inv,
    /// `2^{-f}` for integer-valued `f`, exact.
    Pow2Neg,
}

impl Transform {
    pub fn is_order_key(self) -> bool {
        matches!(
            self,
            Transform::Exp | Transform::ExpNeg | Transform::Log | Transform::NegLog
        )
    }

    pub fn prefix(self) -> &'static str {
        match self {
            Transform::Exp => "exp",
            Transform::ExpNeg => "expneg",
            Transform::Log => "log",
            Transform::NegLog => "neglog",
            Transform::Inv => "inv",
            Transform::Pow2Neg => "pow2neg",
        }
    }

    fn class_of(self, inner: DeclaredClass) -> DeclaredClass {
        use DeclaredClass::*;
        match (self, inner) {
            (Transform::Exp | Transform::ExpNeg | Transform::Pow2Neg, TotallyAdditive) => {
                TotallyMultiplicative
            }
            (Transform::Exp | Transform::ExpNeg | Transform::Pow2Neg, Additive) => Multiplicative,
            (Transform::Log | Transform::NegLog, TotallyMultiplicative) => TotallyAdditive,
            (Transform::Log | Transform::NegLog, Multiplicative) => Additive,
            (Transform::Inv, c) if c.is_multiplicative() => c,
            _ => Neither,
        }
    }

    fn range_of(self, r: ValueRange) -> ValueRange {
        match self {
            Transform::Exp => ValueRange {
                ge_one: r.nonneg,
                gt_one: r.pos,
                ..ValueRange::POS
            },
            Transform::ExpNeg | Transform::Pow2Neg => ValueRange {
                le_one: r.nonneg,
                lt_one: r.pos,
                ..ValueRange::POS
            },
            Transform::Log => ValueRange {
                nonneg: r.ge_one,
                pos: r.gt_one,
                ..ValueRange::NONE
            },
            Transform::NegLog => ValueRange {
                nonneg: r.le_one,
                pos: r.lt_one,
                ..ValueRange::NONE
            },
            Transform::Inv if r.pos => ValueRange {
                nonneg: true,
                pos: true,
                ge_one: r.le_one,
                gt_one: r.lt_one,
                le_one: r.ge_one,
                lt_one: r.gt_one,
            },
            Transform::Inv => ValueRange::NONE,
        }
    }

    fn apply(self, v: Rat, name: &Arc<str>, x: u64) -> Result<Value> {
        let undefined = || Error::NotInDomain {
            function: name.to_string(),
            x,
        };
        Ok(match self {
            Transform::Exp => Value::OrderKey(v, name.clone()),
            Transform::ExpNeg => Value::OrderKey(-v, name.clone()),
            Transform::Log => {
                if !v.is_positive() {
                    return Err(undefined());
                }
                Value::OrderKey(v, name.clone())
            }
            Transform::NegLog => {
                if !v.is_positive() {
                    return Err(undefined());
                }
                Value::OrderKey(v.recip(), name.clone())
            }
            Transform::Inv => {
                if v.is_zero() {
                    return Err(undefined());
                }
                Value::Exact(v.recip())
            }
            Transform::Pow2Neg => {
                if !v.is_integer() {
                    return Err(undefined());
                }
                let e = v
                    .to_integer()
                    .to_i64()
                    .filter(|e| e.abs() <= 1 << 16)
                    .ok_or_else(undefined)?;
                let p = Rat::from_integer(BigInt::one() << e.unsigned_abs());
                Value::Exact(if e >= 0 { p.recip() } else { p })
            }
        })
    }
}

/// Evaluator signature for user-supplied functions.
pub type CustomEval = dyn Fn(u64, &Factorization) -> Result<Value> + Send + Sync;

#[derive(Clone)]
enum Kind {
    Builtin(Builtin),
    Sum(ArithmeticFunction, ArithmeticFunction),
    Product(ArithmeticFunction, ArithmeticFunction),
    Transform(Transform, ArithmeticFunction),
    PrimePower(PrimePowerDef),
    Custom {
        eval: Arc<CustomEval>,
        order_key: bool,
    },
}

/// A named arithmetic function with its declared class and value range.
#[derive(Clone)]
pub struct ArithmeticFunction {
    name: Arc<str>,
    kind: Arc<Kind>,
    class: DeclaredClass,
    range: ValueRange,
}

impl fmt::Debug for ArithmeticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArithmeticFunction")
            .field("name", &self.name)
            .field("class", &self.class)
            .field("range", &self.range)
            .finish()
    }
}

impl ArithmeticFunction {
    fn new(name: impl Into<Arc<str>>, kind: Kind, class: DeclaredClass, range: ValueRange) -> Self {
        ArithmeticFunction {
            name: name.into(),
            kind: Arc::new(kind),
            class,
            range,
        }
    }

    pub fn builtin(b: Builtin) -> Self {
        let (class, range) = b.meta();
        Self::new(b.name(), Kind::Builtin(b), class, range)
    }

    /// A user-defined function. Its claimed class and range are taken on
    /// trust by catalog classification and verified by [`classify`] on a
    /// divisor set.
    pub fn custom<F>(
        name: &str,
        class: DeclaredClass,
        range: ValueRange,
        order_key: bool,
        eval: F,
    ) -> Self
    where
        F: Fn(u64, &Factorization) -> Result<Value> + Send + Sync + 'static,
    {
        Self::new(
            name,
            Kind::Custom {
                eval: Arc::new(eval),
                order_key,
            },
            class,
            range,
        )
    }

    pub(crate) fn from_prime_power_def(name: String, def: PrimePowerDef) -> Self {
        let (class, range) = def.meta();
        Self::new(name, Kind::PrimePower(def), class, range)
    }

    /// Rename and override metadata; used by the catalog for composite
    /// entries whose range is known in closed form.
    pub(crate) fn with_meta(mut self, name: &str, class: DeclaredClass, range: ValueRange) -> Self {
        self.name = name.into();
        self.class = class;
        self.range = range;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn declared_class(&self) -> DeclaredClass {
        self.class
    }

    pub fn declared_range(&self) -> ValueRange {
        self.range
    }

    /// The prime-power definition, when the function was built from one.
    pub fn prime_power_def(&self) -> Option<&PrimePowerDef> {
        match &*self.kind {
            Kind::PrimePower(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_order_key(&self) -> bool {
        match &*self.kind {
            Kind::Transform(t, _) => t.is_order_key(),
            Kind::Custom { order_key, .. } => *order_key,
            _ => false,
        }
    }

    pub fn evaluate(&self, x: u64) -> Result<Value> {
        let fac = factorize(x)?;
        self.eval_factored(x, &fac)
    }

    /// Evaluate at `x` whose factorization is already known.
    pub fn eval_factored(&self, x: u64, fac: &Factorization) -> Result<Value> {
        match &*self.kind {
            Kind::Builtin(b) => Ok(Value::Exact(b.eval(x, fac))),
            Kind::Sum(a, b) => Ok(Value::Exact(
                a.exact_factored(x, fac)? + b.exact_factored(x, fac)?,
            )),
            Kind::Product(a, b) => {
                let u = a.exact_factored(x, fac)?;
                if u.is_zero() {
                    return Ok(Value::Exact(u));
                }
                Ok(Value::Exact(u * b.exact_factored(x, fac)?))
            }
            Kind::Transform(t, inner) => t.apply(inner.exact_factored(x, fac)?, &self.name, x),
            Kind::PrimePower(def) => def.eval(x, fac, &self.name).map(Value::Exact),
            Kind::Custom { eval, .. } => eval(x, fac),
        }
    }

    /// Exact value, refusing order keys.
    pub fn eval_exact(&self, x: u64) -> Result<Rat> {
        let fac = factorize(x)?;
        self.exact_factored(x, &fac)
    }

    pub fn exact_factored(&self, x: u64, fac: &Factorization) -> Result<Rat> {
        match self.eval_factored(x, fac)? {
            Value::Exact(r) => Ok(r),
            Value::OrderKey(..) => Err(Error::OrderKeyInArithmetic(self.name.to_string())),
        }
    }

    /// Word-sized fast path for non-negative values: reduced `(num, den)`,
    /// or `None` when the value needs the general path.
    pub fn eval_small(&self, x: u64, fac: &Factorization) -> Option<(u128, u128)> {
        match &*self.kind {
            Kind::Builtin(b) => b.eval_small(x, fac),
            Kind::Sum(a, b) => {
                let (p, q) = a.eval_small(x, fac)?;
                let (r, s) = b.eval_small(x, fac)?;
                let g = q.gcd(&s);
                let den = (q / g).checked_mul(s)?;
                let num = p.checked_mul(s / g)?.checked_add(r.checked_mul(q / g)?)?;
                Some(reduce(num, den))
            }
            Kind::Product(a, b) => {
                let (p, q) = a.eval_small(x, fac)?;
                if p == 0 {
                    return Some((0, 1));
                }
                let (r, s) = b.eval_small(x, fac)?;
                let (g1, g2) = (p.gcd(&s), r.gcd(&q));
                Some(((p / g1).checked_mul(r / g2)?, (q / g2).checked_mul(s / g1)?))
            }
            Kind::Transform(Transform::Inv, inner) => {
                let (p, q) = inner.eval_small(x, fac)?;
                (p != 0).then_some((q, p))
            }
            Kind::Transform(Transform::Pow2Neg, inner) => match inner.eval_small(x, fac)? {
                (e, 1) if e < 127 => Some((1, 1u128 << e)),
                _ => None,
            },
            _ => None,
        }
    }

    /// `f1 + f2`. Multiplicative summands and order keys are refused.
    pub fn pointwise_sum(
        f1: &ArithmeticFunction,
        f2: &ArithmeticFunction,
    ) -> Result<ArithmeticFunction> {
        Self::require_exact(&[f1, f2])?;
        for f in [f1, f2] {
            if f.class.is_multiplicative() {
                return Err(Error::ClassMismatch(format!(
                    "{} is multiplicative; sums need additive or plain summands",
                    f.name
                )));
            }
        }
        let class = if f1.class.is_additive() && f2.class.is_additive() {
            f1.class.join(
                f2.class,
                DeclaredClass::TotallyAdditive,
                DeclaredClass::Additive,
            )
        } else {
            DeclaredClass::Neither
        };
        let range = ValueRange::sum(f1.range, f2.range);
        let name = format!("({}+{})", f1.name, f2.name);
        Ok(Self::new(
            name,
            Kind::Sum(f1.clone(), f2.clone()),
            class,
            range,
        ))
    }

    /// `g1 · g2`. Additive factors, mixed classes and order keys are refused.
    pub fn pointwise_product(
        g1: &ArithmeticFunction,
        g2: &ArithmeticFunction,
    ) -> Result<ArithmeticFunction> {
        Self::require_exact(&[g1, g2])?;
        let (m1, m2) = (g1.class.is_multiplicative(), g2.class.is_multiplicative());
        if g1.class.is_additive() || g2.class.is_additive() || m1 != m2 {
            return Err(Error::ClassMismatch(format!(
                "cannot multiply {} ({:?}) and {} ({:?})",
                g1.name, g1.class, g2.name, g2.class
            )));
        }
        let class = if m1 {
            g1.class.join(
                g2.class,
                DeclaredClass::TotallyMultiplicative,
                DeclaredClass::Multiplicative,
            )
        } else {
            DeclaredClass::Neither
        };
        let range = ValueRange::product(g1.range, g2.range);
        let name = format!("({}*{})", g1.name, g2.name);
        Ok(Self::new(
            name,
            Kind::Product(g1.clone(), g2.clone()),
            class,
            range,
        ))
    }

    pub fn transform(t: Transform, f: &ArithmeticFunction) -> Result<ArithmeticFunction> {
        Self::require_exact(&[f])?;
        let name = format!("{}:{}", t.prefix(), f.name);
        Ok(Self::new(
            name,
            Kind::Transform(t, f.clone()),
            t.class_of(f.class),
            t.range_of(f.range),
        ))
    }

    fn require_exact(fs: &[&ArithmeticFunction]) -> Result<()> {
        match fs.iter().find(|f| f.is_order_key()) {
            Some(f) => Err(Error::OrderKeyInArithmetic(f.name.to_string())),
            None => Ok(()),
        }
    }

    /// Inner function and transform, for transform nodes.
    fn as_transform(&self) -> Option<(Transform, &ArithmeticFunction)> {
        match &*self.kind {
            Kind::Transform(t, inner) => Some((*t, inner)),
            _ => None,
        }
    }
}

fn reduce(num: u128, den: u128) -> (u128, u128) {
    let g = num.gcd(&den);
    if g <= 1 {
        (num, den)
    } else {
        (num / g, den / g)
    }
}

/// The functions `(f, g, h)` that induce one preorder: `f = -ln h` as an
/// order key, `g = 1/h` exact.
#[derive(Debug, Clone)]
pub struct Triple {
    pub f: ArithmeticFunction,
    pub g: ArithmeticFunction,
    pub h: ArithmeticFunction,
}

/// Build the triple for `h` in `I1`, judged by its declared class and range.
pub fn make_triple(h: &ArithmeticFunction) -> Result<Triple> {
    let r = h.declared_range();
    if !(h.declared_class().is_multiplicative() && r.pos && r.le_one) {
        return Err(Error::Hypothesis(format!(
            "{} is not a positive function with values in (0, 1]; it has no additive partner",
            h.name()
        )));
    }
    triple_unchecked(h)
}

/// Build the triple after checking positivity and multiplicativity on `D_n`.
pub fn make_triple_on(h: &ArithmeticFunction, n: u64) -> Result<Triple> {
    let cm = classify(h, Some(n))?;
    if cm.zero_class != Some(ZeroClass::Positive) {
        return Err(Error::Hypothesis(format!(
            "{} is not in I0 with positive values on the divisors of {n}",
            h.name()
        )));
    }
    triple_unchecked(h)
}

fn triple_unchecked(h: &ArithmeticFunction) -> Result<Triple> {
    Ok(Triple {
        f: ArithmeticFunction::transform(Transform::NegLog, h)?,
        g: ArithmeticFunction::transform(Transform::Inv, h)?,
        h: h.clone(),
    })
}
