use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{build_table, Combinator, DistanceTable, PseudometricSpec};
use crate::arith::{fmt_rat, Rat};
use crate::error::{Error, Result};
use crate::functions::ArithmeticFunction;

/// Witness lists are truncated at this length; counts stay exact.
pub const WITNESS_CAP: usize = 64;

/// Outcome of an axiom check. Every flag is true exactly when its witness
/// list is empty. `triangle_ok` is `None` when the triangle inequality was
/// not examined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub label: String,
    pub n: u64,
    pub identity_ok: bool,
    pub symmetry_ok: bool,
    pub nonnegative_ok: bool,
    pub triangle_ok: Option<bool>,
    pub indiscernibles_ok: bool,
    pub identity_witnesses: Vec<u64>,
    pub symmetry_witnesses: Vec<(u64, u64)>,
    pub negative_witnesses: Vec<(u64, u64)>,
    /// `(x, y, z)` with `d(x, z) > d(x, y) + d(y, z)`.
    pub triangle_witnesses: Vec<(u64, u64, u64)>,
    pub triangle_violations: u64,
    pub indiscernible_witnesses: Vec<(u64, u64)>,
}

impl AxiomReport {
    pub fn is_pseudometric(&self) -> bool {
        self.identity_ok
            && self.symmetry_ok
            && self.nonnegative_ok
            && self.triangle_ok == Some(true)
    }

    pub fn is_metric(&self) -> bool {
        self.is_pseudometric() && self.indiscernibles_ok
    }
}

fn pair_checks(t: &DistanceTable, with_triangle: Option<bool>) -> AxiomReport {
    let m = t.size();
    let ix = &t.index;
    let mut r = AxiomReport {
        label: t.label.clone(),
        n: t.n,
        identity_ok: true,
        symmetry_ok: true,
        nonnegative_ok: true,
        triangle_ok: with_triangle,
        indiscernibles_ok: true,
        identity_witnesses: vec![],
        symmetry_witnesses: vec![],
        negative_witnesses: vec![],
        triangle_witnesses: vec![],
        triangle_violations: 0,
        indiscernible_witnesses: vec![],
    };
    let push = |v: &mut Vec<(u64, u64)>, w| {
        if v.len() < WITNESS_CAP {
            v.push(w)
        }
    };
    for i in 0..m {
        if !t.at(i, i).is_zero() {
            r.identity_witnesses.push(ix[i]);
        }
        for j in 0..m {
            let e = t.at(i, j);
            if e.is_negative() {
                push(&mut r.negative_witnesses, (ix[i], ix[j]));
            }
            if i < j {
                if e != t.at(j, i) {
                    push(&mut r.symmetry_witnesses, (ix[i], ix[j]));
                }
                if e.is_zero() {
                    push(&mut r.indiscernible_witnesses, (ix[i], ix[j]));
                }
            }
        }
    }
    r.identity_witnesses.truncate(WITNESS_CAP);
    r.identity_ok = r.identity_witnesses.is_empty();
    r.symmetry_ok = r.symmetry_witnesses.is_empty();
    r.nonnegative_ok = r.negative_witnesses.is_empty();
    r.indiscernibles_ok = r.indiscernible_witnesses.is_empty();
    r
}

/// Entries scaled by the common denominator, as machine integers when
/// every triangle sum stays in range.
enum Scaled {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

fn scaled(entries: &[Rat]) -> Scaled {
    let l = entries
        .iter()
        .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let big: Vec<BigInt> = entries
        .iter()
        .map(|e| e.numer() * (&l / e.denom()))
        .collect();
    let bound = BigInt::one() << 120;
    if big.iter().all(|v| v.abs() < bound) {
        Scaled::Small(big.iter().map(|v| v.to_i128().expect("bounded")).collect())
    } else {
        Scaled::Big(big)
    }
}

fn triangle_row<T, F>(
    vals: &[T],
    m: usize,
    i: usize,
    violated: F,
) -> (u64, Vec<(usize, usize, usize)>)
where
    F: Fn(&T, &T, &T) -> bool,
{
    let mut count = 0;
    let mut wit = Vec::new();
    for j in 0..m {
        for k in 0..m {
            if violated(&vals[i * m + k], &vals[i * m + j], &vals[j * m + k]) {
                count += 1;
                if wit.len() < WITNESS_CAP {
                    wit.push((i, j, k));
                }
            }
        }
    }
    (count, wit)
}

/// Identity, symmetry, non-negativity over all pairs and the triangle
/// inequality over all ordered triples, in exact arithmetic.
pub fn verify_pseudometric(t: &DistanceTable) -> AxiomReport {
    let mut r = pair_checks(t, Some(true));
    let m = t.size();
    let rows: Vec<(u64, Vec<(usize, usize, usize)>)> = match scaled(&t.entries) {
        Scaled::Small(v) => (0..m)
            .into_par_iter()
            .map(|i| triangle_row(&v, m, i, |xz, xy, yz| *xz > xy + yz))
            .collect(),
        Scaled::Big(v) => (0..m)
            .into_par_iter()
            .map(|i| triangle_row(&v, m, i, |xz: &BigInt, xy, yz| *xz > xy + yz))
            .collect(),
    };
    for (count, wit) in rows {
        r.triangle_violations += count;
        for (i, j, k) in wit {
            if r.triangle_witnesses.len() < WITNESS_CAP {
                r.triangle_witnesses
                    .push((t.index[i], t.index[j], t.index[k]));
            }
        }
    }
    r.triangle_ok = Some(r.triangle_violations == 0);
    r
}

/// Pairwise checks only, including `d(x, y) = 0 ⟹ x = y` on `D_n`.
pub fn verify_indiscernibles(t: &DistanceTable) -> AxiomReport {
    pair_checks(t, None)
}

/// Identity of indiscernibles for the extended distance on an integer
/// window `[a, b]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowIndiscernibles {
    pub n: u64,
    pub a: i64,
    pub b: i64,
    pub metric: bool,
    /// First pair `x < y` in the window with distance zero.
    pub witness: Option<(i64, i64)>,
}

pub fn verify_indiscernibles_window(
    spec: &PseudometricSpec,
    a: i64,
    b: i64,
) -> Result<WindowIndiscernibles> {
    if a > b {
        return Err(Error::EmptyWindow(a, b));
    }
    let mut witness = None;
    'outer: for x in a..=b {
        for y in x + 1..=b {
            if spec.distance(x, y).is_zero() {
                witness = Some((x, y));
                break 'outer;
            }
        }
    }
    Ok(WindowIndiscernibles {
        n: spec.n(),
        a,
        b,
        metric: witness.is_none(),
        witness,
    })
}

/// Four injectivity conditions for a pseudometric, each computed on its
/// own. The last three always agree and imply the first; the first does
/// not imply the others (`Ω` on `D_6` is a metric with `d(1,2) = d(1,3)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EquivalenceConditions {
    /// `d(x, y) = 0 ⟹ x = y`
    pub metric: bool,
    /// `d(1, x) = d(1, y) ⟹ x = y`
    pub distance_from_one_injective: bool,
    /// the generating function has no repeated value
    pub generating_injective: bool,
    /// `x ⪯ y ∧ y ⪯ x ⟹ x = y`
    pub preorder_antisymmetric: bool,
}

impl EquivalenceConditions {
    pub fn all_equal(&self) -> bool {
        let v = [
            self.metric,
            self.distance_from_one_injective,
            self.generating_injective,
            self.preorder_antisymmetric,
        ];
        v.iter().all(|&b| b == v[0])
    }

    /// `(b) ⟺ (c) ⟺ (d)` and `(b) ⟹ (a)`.
    pub fn consistent(&self) -> bool {
        let b = self.distance_from_one_injective;
        b == self.generating_injective && b == self.preorder_antisymmetric && (!b || self.metric)
    }
}

pub fn equivalence_conditions(t: &DistanceTable) -> EquivalenceConditions {
    let m = t.size();
    let pairs = || (0..m).flat_map(move |i| (i + 1..m).map(move |j| (i, j)));
    let metric = pairs().all(|(i, j)| !t.at(i, j).is_zero());
    let distance_from_one_injective = pairs().all(|(i, j)| t.at(0, i) != t.at(0, j));
    let mut g = t.generating_values();
    g.sort();
    g.dedup();
    let generating_injective = g.len() == m;
    let le = |i: usize, j: usize| t.at(0, i) <= t.at(0, j);
    let preorder_antisymmetric = pairs().all(|(i, j)| !(le(i, j) && le(j, i)));
    EquivalenceConditions {
        metric,
        distance_from_one_injective,
        generating_injective,
        preorder_antisymmetric,
    }
}

/// Is the table 1-centred, `d(x, y) = d(1, x) + d(1, y)` for `x ≠ y`?
pub fn is_centred(t: &DistanceTable) -> bool {
    let m = t.size();
    (0..m).all(|i| (0..m).all(|j| i == j || *t.at(i, j) == t.at(0, i) + t.at(0, j)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairComparison {
    pub left: String,
    pub right: String,
    pub distinct: bool,
    /// First `(x, y, left, right)` where the tables differ.
    pub witness: Option<(u64, u64, String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisjointnessReport {
    pub n: u64,
    pub pairs: Vec<PairComparison>,
    pub all_distinct: bool,
}

/// Build `(f, addf)`, `(g, addg)`, `(h, addh)`, `(h, mulh)` on `D_n` and
/// compare them pairwise.
pub fn family_disjointness(
    n: u64,
    f: &ArithmeticFunction,
    g: &ArithmeticFunction,
    h: &ArithmeticFunction,
) -> Result<DisjointnessReport> {
    let ds = crate::arith::divisor_set(n)?;
    if ds.factorization.omega() < 2 {
        return Err(Error::TooFewPrimeDivisors(n));
    }
    let sf = PseudometricSpec::new(f.clone(), Combinator::AddF, n)?;
    let sg = PseudometricSpec::new(g.clone(), Combinator::AddG, n)?;
    let sh = PseudometricSpec::new(h.clone(), Combinator::AddH, n)?;
    let sm = PseudometricSpec::new(h.clone(), Combinator::MulH, n)?;
    if !sf.membership().a0 {
        return Err(Error::ClassMismatch(format!(
            "{} is not in A0 on D_{n}",
            f.name()
        )));
    }
    if !sg.membership().m {
        return Err(Error::ClassMismatch(format!(
            "{} is not in M on D_{n}",
            g.name()
        )));
    }
    if !sh.membership().i2 {
        return Err(Error::ClassMismatch(format!(
            "{} is not in I2 on D_{n}",
            h.name()
        )));
    }
    let tables: Vec<DistanceTable> = [&sf, &sg, &sh, &sm]
        .iter()
        .map(|s| build_table(s))
        .collect();
    let mut pairs = Vec::new();
    for i in 0..tables.len() {
        for j in i + 1..tables.len() {
            let (a, b) = (&tables[i], &tables[j]);
            let m = a.size();
            let witness = (0..m * m).find(|&k| a.entries[k] != b.entries[k]).map(|k| {
                (
                    a.index[k / m],
                    a.index[k % m],
                    fmt_rat(&a.entries[k]),
                    fmt_rat(&b.entries[k]),
                )
            });
            pairs.push(PairComparison {
                left: a.label.clone(),
                right: b.label.clone(),
                distinct: witness.is_some(),
                witness,
            });
        }
    }
    let all_distinct = pairs.iter().all(|p| p.distinct);
    Ok(DisjointnessReport {
        n,
        pairs,
        all_distinct,
    })
}
