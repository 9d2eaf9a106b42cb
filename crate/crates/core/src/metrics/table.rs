use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Combinator, PseudometricSpec};
use crate::arith::{fmt_rat, parse_rat, Rat};
use crate::error::{Error, Result};

/// A materialized distance matrix on `D_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    pub n: u64,
    pub label: String,
    /// Set when the table came straight from one spec.
    pub combinator: Option<Combinator>,
    pub index: Vec<u64>,
    /// Row-major, `index.len()²` entries.
    pub entries: Vec<Rat>,
}

impl DistanceTable {
    pub fn size(&self) -> usize {
        self.index.len()
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.index.len() + j]
    }

    /// Entry for two divisors of `n`.
    pub fn entry(&self, x: u64, y: u64) -> Option<&Rat> {
        let i = self.index.binary_search(&x).ok()?;
        let j = self.index.binary_search(&y).ok()?;
        Some(self.at(i, j))
    }

    pub fn transpose(&self) -> DistanceTable {
        let m = self.size();
        let entries = (0..m * m).map(|k| self.at(k % m, k / m).clone()).collect();
        DistanceTable {
            entries,
            ..self.clone()
        }
    }

    /// The all-zero table on the same index.
    pub fn zero_like(&self) -> DistanceTable {
        DistanceTable {
            label: "zero".into(),
            combinator: None,
            entries: vec![Rat::zero(); self.entries.len()],
            ..self.clone()
        }
    }

    /// Keys `d(1, x)` in index order.
    pub fn generating_values(&self) -> Vec<Rat> {
        (0..self.size()).map(|j| self.at(0, j).clone()).collect()
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            n: self.n,
            label: self.label.clone(),
            combinator: self.combinator,
            index: self.index.clone(),
            entries: self.entries.iter().map(fmt_rat).collect(),
        }
    }

    pub fn from_json(j: &TableJson) -> Result<Self> {
        let m = j.index.len();
        if j.entries.len() != m * m {
            return Err(Error::Invalid(format!(
                "table needs {} entries, got {}",
                m * m,
                j.entries.len()
            )));
        }
        Ok(DistanceTable {
            n: j.n,
            label: j.label.clone(),
            combinator: j.combinator,
            index: j.index.clone(),
            entries: j
                .entries
                .iter()
                .map(|s| parse_rat(s))
                .collect::<Result<_>>()?,
        })
    }

    /// CSV with a header row of divisors and one row per divisor.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d");
        for x in &self.index {
            out.push_str(&format!(",{x}"));
        }
        out.push('\n');
        for (i, x) in self.index.iter().enumerate() {
            out.push_str(&x.to_string());
            for j in 0..self.size() {
                out.push(',');
                out.push_str(&fmt_rat(self.at(i, j)));
            }
            out.push('\n');
        }
        out
    }

    /// Aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = std::iter::once(
            std::iter::once(String::new())
                .chain(self.index.iter().map(u64::to_string))
                .collect(),
        )
        .chain(self.index.iter().enumerate().map(|(i, x)| {
            std::iter::once(x.to_string())
                .chain((0..self.size()).map(|j| fmt_rat(self.at(i, j))))
                .collect()
        }))
        .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        let mut out = format!("# {}\n", self.label);
        for row in cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// JSON form: divisor index plus row-major `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub n: u64,
    pub label: String,
    pub combinator: Option<Combinator>,
    pub index: Vec<u64>,
    pub entries: Vec<String>,
}

pub fn build_table(spec: &PseudometricSpec) -> DistanceTable {
    let idx = &spec.divisors().divisors;
    let mut entries = Vec::with_capacity(idx.len() * idx.len());
    for &a in idx {
        for &b in idx {
            entries.push(spec.divisor_distance(a, b));
        }
    }
    DistanceTable {
        n: spec.n(),
        label: spec.label(),
        combinator: Some(spec.combinator()),
        index: idx.clone(),
        entries,
    }
}

/// Pointwise sum of two tables on the same modulus.
pub fn combine_sum(t1: &DistanceTable, t2: &DistanceTable) -> Result<DistanceTable> {
    if t1.n != t2.n {
        return Err(Error::ModulusMismatch(t1.n, t2.n));
    }
    Ok(DistanceTable {
        n: t1.n,
        label: format!("({} + {})", t1.label, t2.label),
        combinator: None,
        index: t1.index.clone(),
        entries: t1
            .entries
            .iter()
            .zip(&t2.entries)
            .map(|(a, b)| a + b)
            .collect(),
    })
}

/// `λ · d` for `λ > 0`.
pub fn scale(lambda: &Rat, t: &DistanceTable) -> Result<DistanceTable> {
    if !lambda.is_positive() {
        return Err(Error::NonPositiveScale(fmt_rat(lambda)));
    }
    Ok(DistanceTable {
        label: format!("{} * {}", fmt_rat(lambda), t.label),
        combinator: None,
        entries: t.entries.iter().map(|e| e * lambda).collect(),
        ..t.clone()
    })
}
