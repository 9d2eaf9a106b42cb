use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::Serialize;

use super::sieve::LinearSieve;
use crate::arith::{factorize, partition_count};
use crate::error::{Error, Result};
use crate::functions::ArithmeticFunction;
use crate::metrics::Combinator;
use crate::orders::{preorder_of, quotient_by_preorder, DivisorPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MultiperfectHit {
    pub x: u64,
    pub k: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiperfectReport {
    pub max: u64,
    pub hits: Vec<MultiperfectHit>,
    pub all_even: bool,
}

/// All `2 ≤ x ≤ max` with `σ(x) = k·x`, `k ≥ 2`.
pub fn scan_multiperfect(max: u64) -> Result<MultiperfectReport> {
    if max < 2 {
        return Err(Error::OutOfDomain { min: 2, got: max });
    }
    let sigma = LinearSieve::new(max)?.sigma_table();
    let hits: Vec<MultiperfectHit> = (2..=max)
        .filter(|&x| sigma[x as usize] % x == 0)
        .map(|x| MultiperfectHit {
            x,
            k: sigma[x as usize] / x,
        })
        .filter(|h| h.k >= 2)
        .collect();
    Ok(MultiperfectReport {
        max,
        all_even: hits.iter().all(|h| h.x % 2 == 0),
        hits,
    })
}

/// `p(τ(n) − 1)` and `p(Ω(n) − 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionBounds {
    pub n: u64,
    pub p_nd: BigUint,
    pub p_omega: BigUint,
}

impl PartitionBounds {
    /// `{"p_nd": …, "p_omega": …}` with the counts as JSON numbers of any size.
    pub fn to_json(&self) -> String {
        format!("{{\"p_nd\": {}, \"p_omega\": {}}}", self.p_nd, self.p_omega)
    }
}

pub fn partition_bounds(n: u64) -> Result<PartitionBounds> {
    if n < 2 {
        return Err(Error::OutOfDomain { min: 2, got: n });
    }
    let fac = factorize(n)?;
    Ok(PartitionBounds {
        n,
        p_nd: partition_count(fac.divisor_count() - 1),
        p_omega: partition_count(fac.big_omega() - 1),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub function: String,
    pub combinator: String,
    pub blocks: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: u64,
    pub tested: Vec<CensusEntry>,
    /// Functions no combinator admits on `D_n`, with the reason.
    pub skipped: Vec<(String, String)>,
    /// Distinct canonical partitions of `D_n`.
    pub partitions: Vec<DivisorPartition>,
    pub distinct: usize,
    /// Distinct block-size profiles of the partitions restricted to
    /// `D_n \ {1}`: partitions of the `τ(n) − 1` free values up to
    /// relabelling, the quantity `p(τ(n) − 1)` bounds.
    pub distinct_shapes: usize,
    pub bound_nd: String,
    pub bound_omega: String,
    pub within_bound: bool,
}

/// Partitions of `D_n` realised by `functions`, each under the first of
/// `AddF`, `AddG`, `AddH`, `MulH` it admits.
pub fn partition_census(n: u64, functions: &[ArithmeticFunction]) -> Result<CensusReport> {
    let bounds = partition_bounds(n)?;
    let mut tested = Vec::new();
    let mut skipped = Vec::new();
    let mut found: BTreeSet<DivisorPartition> = BTreeSet::new();
    for f in functions {
        let mut last_err = String::new();
        let mut done = false;
        for c in [
            Combinator::AddF,
            Combinator::AddG,
            Combinator::AddH,
            Combinator::MulH,
        ] {
            match preorder_of(f, c, n) {
                Ok(p) => {
                    let q = quotient_by_preorder(&p);
                    tested.push(CensusEntry {
                        function: f.name().to_string(),
                        combinator: c.to_string(),
                        blocks: q.len(),
                    });
                    found.insert(q);
                    done = true;
                    break;
                }
                Err(e) => last_err = e.to_string(),
            }
        }
        if !done {
            skipped.push((f.name().to_string(), last_err));
        }
    }
    let shapes: BTreeSet<Vec<usize>> = found.iter().map(shape_without_one).collect();
    let partitions: Vec<DivisorPartition> = found.into_iter().collect();
    let distinct = partitions.len();
    Ok(CensusReport {
        n,
        tested,
        skipped,
        within_bound: BigUint::from(shapes.len()) <= bounds.p_nd,
        distinct,
        distinct_shapes: shapes.len(),
        partitions,
        bound_nd: bounds.p_nd.to_string(),
        bound_omega: bounds.p_omega.to_string(),
    })
}

/// Sorted block sizes after deleting 1 from its block.
pub fn shape_without_one(p: &DivisorPartition) -> Vec<usize> {
    let mut v: Vec<usize> = p
        .blocks
        .iter()
        .map(|b| b.iter().filter(|&&d| d != 1).count())
        .filter(|&k| k > 0)
        .collect();
    v.sort_unstable();
    v
}
