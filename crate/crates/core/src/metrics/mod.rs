//! Pseudometrics on `D_n` built from admissible functions, their gcd
//! extension to the integers, and exhaustive axiom verification.

mod table;
mod verify;

pub use table::{build_table, combine_sum, scale, DistanceTable, TableJson};
pub use verify::{
    equivalence_conditions, family_disjointness, is_centred, verify_indiscernibles,
    verify_indiscernibles_window, verify_pseudometric, AxiomReport, DisjointnessReport,
    EquivalenceConditions, WindowIndiscernibles,
};

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisor_set, factorize, gcd_z, DivisorSet, Rat};
use crate::error::{Error, Result};
use crate::functions::{classify, ArithmeticFunction, ClassMembership};

/// How two function values combine into a distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Combinator {
    /// `f(a) + f(b)`
    #[serde(rename = "addf")]
    AddF,
    /// `g(a) + g(b) - 2`
    #[serde(rename = "addg")]
    AddG,
    /// `2 - h(a) - h(b)`
    #[serde(rename = "addh")]
    AddH,
    /// `1 - h(a)·h(b)`
    #[serde(rename = "mulh")]
    MulH,
    #[serde(rename = "delta-addf")]
    DeltaAddF,
    /// Not a pseudometric in general; reachable only through
    /// [`PseudometricSpec::unchecked`].
    #[serde(rename = "delta-addg")]
    DeltaAddG,
    #[serde(rename = "delta-addh")]
    DeltaAddH,
    #[serde(rename = "delta-mulh")]
    DeltaMulH,
}

impl Combinator {
    pub const ALL: [Combinator; 8] = [
        Combinator::AddF,
        Combinator::AddG,
        Combinator::AddH,
        Combinator::MulH,
        Combinator::DeltaAddF,
        Combinator::DeltaAddG,
        Combinator::DeltaAddH,
        Combinator::DeltaMulH,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Combinator::AddF => "addf",
            Combinator::AddG => "addg",
            Combinator::AddH => "addh",
            Combinator::MulH => "mulh",
            Combinator::DeltaAddF => "delta-addf",
            Combinator::DeltaAddG => "delta-addg",
            Combinator::DeltaAddH => "delta-addh",
            Combinator::DeltaMulH => "delta-mulh",
        }
    }

    pub fn is_delta(self) -> bool {
        matches!(
            self,
            Combinator::DeltaAddF
                | Combinator::DeltaAddG
                | Combinator::DeltaAddH
                | Combinator::DeltaMulH
        )
    }

    /// The plain combinator with the same formula.
    pub fn base(self) -> Combinator {
        match self {
            Combinator::DeltaAddF => Combinator::AddF,
            Combinator::DeltaAddG => Combinator::AddG,
            Combinator::DeltaAddH => Combinator::AddH,
            Combinator::DeltaMulH => Combinator::MulH,
            c => c,
        }
    }

    /// Whether `d(1, ·)` orders opposite to the function value.
    pub fn reverses_order(self) -> bool {
        matches!(self.base(), Combinator::AddH | Combinator::MulH)
    }

    /// Does a function with membership `cm` meet this combinator's class
    /// requirement?
    pub fn admits(self, cm: &ClassMembership) -> bool {
        match self {
            Combinator::AddF => cm.a0 || cm.s0,
            Combinator::DeltaAddF => cm.a0,
            Combinator::AddG => cm.m0,
            Combinator::AddH | Combinator::MulH | Combinator::DeltaAddH | Combinator::DeltaMulH => {
                cm.i0
            }
            Combinator::DeltaAddG => false,
        }
    }

    fn requirement(self) -> &'static str {
        match self {
            Combinator::AddF => "A0 or S0",
            Combinator::DeltaAddF => "A0",
            Combinator::AddG => "M0",
            Combinator::DeltaAddG => "no class (unchecked use only)",
            _ => "I0",
        }
    }

    /// The formula applied to two function values.
    pub fn combine(self, u: &Rat, v: &Rat) -> Rat {
        let two = || Rat::from_integer(2.into());
        match self.base() {
            Combinator::AddF => u + v,
            Combinator::AddG => u + v - two(),
            Combinator::AddH => two() - u - v,
            Combinator::MulH => Rat::one() - u * v,
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Combinator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Combinator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Combinator::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown combinator `{s}`")))
    }
}

/// A function, a combinator and a modulus, with the function's values on
/// `D_n` cached.
#[derive(Debug, Clone)]
pub struct PseudometricSpec {
    function: ArithmeticFunction,
    combinator: Combinator,
    n: u64,
    divisors: DivisorSet,
    values: Vec<Rat>,
    membership: ClassMembership,
    checked: bool,
}

impl PseudometricSpec {
    /// Build a spec after verifying the combinator's class requirement on
    /// `D_n`.
    pub fn new(function: ArithmeticFunction, combinator: Combinator, n: u64) -> Result<Self> {
        let spec = Self::unchecked(function, combinator, n)?;
        if !combinator.admits(&spec.membership) {
            return Err(Error::ClassMismatch(format!(
                "{} needs a function in {} on the divisors of {n}; {} is in {{{}}}",
                combinator,
                combinator.requirement(),
                spec.function.name(),
                spec.membership.labels().join(", ")
            )));
        }
        Ok(PseudometricSpec {
            checked: true,
            ..spec
        })
    }

    /// Build without the class requirement. Order-key functions and
    /// `n < 2` are still refused.
    pub fn unchecked(function: ArithmeticFunction, combinator: Combinator, n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfDomain { min: 2, got: n });
        }
        if function.is_order_key() {
            return Err(Error::OrderKeyInArithmetic(function.name().to_string()));
        }
        let divisors = divisor_set(n)?;
        let values = divisors
            .divisors
            .iter()
            .map(|&d| function.exact_factored(d, &factorize(d)?))
            .collect::<Result<Vec<_>>>()?;
        let membership = classify(&function, Some(n))?;
        Ok(PseudometricSpec {
            function,
            combinator,
            n,
            divisors,
            values,
            membership,
            checked: false,
        })
    }

    pub fn function(&self) -> &ArithmeticFunction {
        &self.function
    }

    pub fn combinator(&self) -> Combinator {
        self.combinator
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn divisors(&self) -> &DivisorSet {
        &self.divisors
    }

    pub fn membership(&self) -> &ClassMembership {
        &self.membership
    }

    pub fn is_checked(&self) -> bool {
        self.checked
    }

    pub fn label(&self) -> String {
        format!("{}/{}/{}", self.function.name(), self.combinator, self.n)
    }

    /// Function value at a divisor of `n`.
    pub fn value_at(&self, d: u64) -> &Rat {
        &self.values[self.divisors.index_of(d).expect("argument divides n")]
    }

    /// Distance between two divisors of `n`.
    pub fn divisor_distance(&self, a: u64, b: u64) -> Rat {
        if a == b {
            return Rat::zero();
        }
        let (a, b) = if self.combinator.is_delta() {
            let g = a.gcd(&b);
            (a / g, b / g)
        } else {
            (a, b)
        };
        self.combinator.combine(self.value_at(a), self.value_at(b))
    }

    /// `d^(n)(x, y) = d(gcd(x, n), gcd(y, n))`.
    pub fn distance(&self, x: i64, y: i64) -> Rat {
        self.divisor_distance(gcd_z(x, self.n), gcd_z(y, self.n))
    }

    /// The generating function `f_d(x) = d(1, x)`.
    pub fn generating(&self, x: i64) -> Rat {
        self.distance(1, x)
    }
}
