use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::Preorder;
use crate::arith::gcd_z;
use crate::error::{Error, Result};
use crate::metrics::DistanceTable;

/// A partition of `D_n` in canonical form: each block sorted, blocks
/// ordered by their least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivisorPartition {
    pub n: u64,
    pub blocks: Vec<Vec<u64>>,
}

impl DivisorPartition {
    pub fn new(n: u64, mut blocks: Vec<Vec<u64>>) -> Self {
        blocks.retain(|b| !b.is_empty());
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        DivisorPartition { n, blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, d: u64) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&d).is_ok())
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        v.sort_unstable();
        v
    }
}

fn union_find_blocks(index: &[u64], same: impl Fn(usize, usize) -> bool) -> Vec<Vec<u64>> {
    let m = index.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..m {
        for j in i + 1..m {
            if same(i, j) {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for (i, &d) in index.iter().enumerate() {
        let r = root(&mut parent, i);
        groups.entry(r).or_default().push(d);
    }
    groups.into_values().collect()
}

/// Classes of `d(x, y) = 0`. On a table that is not a pseudometric the
/// relation is closed transitively.
pub fn quotient_by_metric(t: &DistanceTable) -> DivisorPartition {
    DivisorPartition::new(
        t.n,
        union_find_blocks(&t.index, |i, j| {
            t.at(i, j).is_zero() && t.at(j, i).is_zero()
        }),
    )
}

/// Classes of equal key, i.e. `d(1, x) = d(1, y)`.
pub fn quotient_by_preorder(p: &Preorder) -> DivisorPartition {
    let mut groups: BTreeMap<&crate::arith::Rat, Vec<u64>> = BTreeMap::new();
    for (d, k) in p.index.iter().zip(&p.keys) {
        groups.entry(k).or_default().push(*d);
    }
    DivisorPartition::new(p.n, groups.into_values().collect())
}

/// Classes of `x ⪯ y ∧ y ⪯ x`, evaluated on the relation itself.
pub fn quotient_by_relation(p: &Preorder) -> DivisorPartition {
    let ix = &p.index;
    DivisorPartition::new(
        p.n,
        union_find_blocks(ix, |i, j| p.le(ix[i], ix[j]) && p.le(ix[j], ix[i])),
    )
}

/// Is every block of `p1` inside a block of `p2`?
pub fn refinement_check(p1: &DivisorPartition, p2: &DivisorPartition) -> Result<bool> {
    if p1.n != p2.n {
        return Err(Error::ModulusMismatch(p1.n, p2.n));
    }
    Ok(p1.blocks.iter().all(|b| {
        let target = p2.block_of(b[0]);
        target.is_some() && b.iter().all(|&d| p2.block_of(d) == target)
    }))
}

/// A partition of the integer window `[a, b]` pulled back through
/// `x ↦ gcd(x, n)`. `block_id[i]` is the index, in the source partition,
/// of the block holding `gcd(a + i, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowPartition {
    pub n: u64,
    pub a: i64,
    pub b: i64,
    pub block_id: Vec<usize>,
}

impl WindowPartition {
    pub fn block_of(&self, x: i64) -> Option<usize> {
        (self.a..=self.b)
            .contains(&x)
            .then(|| self.block_id[(x - self.a) as usize])
    }

    pub fn same_block(&self, x: i64, y: i64) -> bool {
        matches!((self.block_of(x), self.block_of(y)), (Some(i), Some(j)) if i == j)
    }

    /// Number of distinct blocks met by the window.
    pub fn block_count(&self) -> usize {
        let mut ids = self.block_id.clone();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }

    /// The window's blocks as integer lists, ordered by block id.
    pub fn blocks(&self) -> Vec<Vec<i64>> {
        let mut groups: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
        for (i, &id) in self.block_id.iter().enumerate() {
            groups.entry(id).or_default().push(self.a + i as i64);
        }
        groups.into_values().collect()
    }
}

pub fn extend_to_window(p: &DivisorPartition, a: i64, b: i64) -> Result<WindowPartition> {
    if a > b {
        return Err(Error::EmptyWindow(a, b));
    }
    if p.n < 2 {
        return Err(Error::OutOfDomain { min: 2, got: p.n });
    }
    let mut lookup = BTreeMap::new();
    for (id, block) in p.blocks.iter().enumerate() {
        for &d in block {
            lookup.insert(d, id);
        }
    }
    let block_id = (a..=b)
        .map(|x| {
            lookup.get(&gcd_z(x, p.n)).copied().ok_or_else(|| {
                Error::Invalid(format!("partition does not cover gcd({x}, {})", p.n))
            })
        })
        .collect::<Result<_>>()?;
    Ok(WindowPartition {
        n: p.n,
        a,
        b,
        block_id,
    })
}
