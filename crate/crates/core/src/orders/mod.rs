//! Preorders induced by distances from 1, the quotient partitions of
//! `D_n` they define, and their pull-back to integer windows.

mod lemmas;
mod partition;

pub use lemmas::{
    class_count_checks, compare_quotients, coprime_squarefree_transfer, permutation_invariance,
    triple_equivalence, triple_equivalence_explicit, ClassCountReport, LemmaCheck,
    PermutationReport, QuotientComparison, TripleReport,
};
pub use partition::{
    extend_to_window, quotient_by_metric, quotient_by_preorder, quotient_by_relation,
    refinement_check, DivisorPartition, WindowPartition,
};

use std::cmp::Ordering;

use serde::Serialize;

use crate::arith::{divisor_set, factorize, fmt_rat, gcd_z, Rat};
use crate::error::{Error, Result};
use crate::functions::{classify, ArithmeticFunction};
use crate::metrics::{Combinator, DistanceTable, PseudometricSpec};

/// A total preorder on `D_n` given by a key per divisor: `x ⪯ y` iff
/// `key(x) ≤ key(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preorder {
    pub n: u64,
    pub label: String,
    pub index: Vec<u64>,
    pub keys: Vec<Rat>,
    /// Keys are order-key surrogates rather than distances.
    pub order_key: bool,
}

impl Preorder {
    fn pos(&self, d: u64) -> usize {
        self.index.binary_search(&d).expect("argument divides n")
    }

    pub fn key(&self, d: u64) -> &Rat {
        &self.keys[self.pos(d)]
    }

    /// Compare two divisors of `n`.
    pub fn compare(&self, x: u64, y: u64) -> Ordering {
        self.key(x).cmp(self.key(y))
    }

    pub fn le(&self, x: u64, y: u64) -> bool {
        self.key(x) <= self.key(y)
    }

    /// Compare two integers through their gcd images.
    pub fn compare_extended(&self, x: i64, y: i64) -> Ordering {
        self.compare(gcd_z(x, self.n), gcd_z(y, self.n))
    }

    /// Dense ranks in index order: equal keys share a rank, ranks start at 0.
    pub fn rank_vector(&self) -> Vec<usize> {
        let mut sorted: Vec<&Rat> = self.keys.iter().collect();
        sorted.sort();
        sorted.dedup();
        self.keys
            .iter()
            .map(|k| sorted.binary_search(&k).expect("present"))
            .collect()
    }

    /// Any two elements comparable, checked pairwise on the relation.
    pub fn is_total(&self) -> bool {
        self.index
            .iter()
            .all(|&x| self.index.iter().all(|&y| self.le(x, y) || self.le(y, x)))
    }

    /// Is 1 a minimum?
    pub fn one_is_minimal(&self) -> bool {
        self.keys.iter().all(|k| *k >= self.keys[0])
    }

    pub fn to_json(&self) -> PreorderJson {
        PreorderJson {
            n: self.n,
            label: self.label.clone(),
            order_key: self.order_key,
            index: self.index.clone(),
            keys: self.keys.iter().map(fmt_rat).collect(),
            ranks: self.rank_vector(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct PreorderJson {
    pub n: u64,
    pub label: String,
    pub order_key: bool,
    pub index: Vec<u64>,
    pub keys: Vec<String>,
    pub ranks: Vec<usize>,
}

/// The preorder of a pseudometric: keys `d^(n)(1, x)`.
pub fn induced_preorder(spec: &PseudometricSpec) -> Preorder {
    let index = spec.divisors().divisors.clone();
    let keys = index.iter().map(|&d| spec.divisor_distance(1, d)).collect();
    Preorder {
        n: spec.n(),
        label: spec.label(),
        index,
        keys,
        order_key: false,
    }
}

/// The preorder read off a table's first row.
pub fn preorder_from_table(t: &DistanceTable) -> Preorder {
    Preorder {
        n: t.n,
        label: t.label.clone(),
        index: t.index.clone(),
        keys: t.generating_values(),
        order_key: false,
    }
}

/// The preorder of `(function, combinator)` on `D_n`. Exact functions go
/// through their distance; order-key functions use the surrogate,
/// reversed for the `h` combinators so that it tracks `d(1, x)`.
pub fn preorder_of(
    function: &ArithmeticFunction,
    combinator: Combinator,
    n: u64,
) -> Result<Preorder> {
    if !function.is_order_key() {
        return Ok(induced_preorder(&PseudometricSpec::new(
            function.clone(),
            combinator,
            n,
        )?));
    }
    let cm = classify(function, Some(n))?;
    if !combinator.admits(&cm) {
        return Err(Error::ClassMismatch(format!(
            "{} does not meet the class requirement of {combinator} on the divisors of {n}",
            function.name()
        )));
    }
    preorder_of_order_key(function, combinator, n)
}

fn preorder_of_order_key(
    function: &ArithmeticFunction,
    combinator: Combinator,
    n: u64,
) -> Result<Preorder> {
    let index = divisor_set(n)?.divisors;
    let raw: Vec<Rat> = index
        .iter()
        .map(|&d| Ok(function.eval_factored(d, &factorize(d)?)?.key().clone()))
        .collect::<Result<_>>()?;
    let keys = raw
        .iter()
        .map(|k| {
            if combinator.reverses_order() {
                &raw[0] - k
            } else {
                k - &raw[0]
            }
        })
        .collect();
    Ok(Preorder {
        n,
        label: format!("{}/{}/{}", function.name(), combinator, n),
        index,
        keys,
        order_key: true,
    })
}

/// [`preorder_of`] without the class requirement.
pub fn preorder_of_unchecked(
    function: &ArithmeticFunction,
    combinator: Combinator,
    n: u64,
) -> Result<Preorder> {
    if function.is_order_key() {
        return preorder_of_order_key(function, combinator, n);
    }
    Ok(induced_preorder(&PseudometricSpec::unchecked(
        function.clone(),
        combinator,
        n,
    )?))
}

/// Free-function form of [`Preorder::compare_extended`].
pub fn compare_extended(p: &Preorder, x: i64, y: i64) -> Ordering {
    p.compare_extended(x, y)
}
