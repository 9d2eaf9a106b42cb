use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checkpoint::Checkpoint;
use super::sieve::LinearSieve;
use crate::arith::{factorize, fmt_rat, gcd_u64, parse_rat, Rat};
use crate::error::{Error, Result};
use crate::functions::ArithmeticFunction;

/// Version tag of the report and checkpoint schemas.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    /// Every pair with equal values.
    All,
    /// Pairs with equal values and `gcd(x, y) = 1`.
    Coprime,
    /// Squarefree arguments only.
    Squarefree,
}

impl ScanMode {
    pub fn name(self) -> &'static str {
        match self {
            ScanMode::All => "all",
            ScanMode::Coprime => "coprime",
            ScanMode::Squarefree => "squarefree",
        }
    }
}

impl fmt::Display for ScanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScanMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(ScanMode::All),
            "coprime" => Ok(ScanMode::Coprime),
            "squarefree" => Ok(ScanMode::Squarefree),
            _ => Err(Error::Invalid(format!(
                "unknown scan mode `{s}` (all, coprime, squarefree)"
            ))),
        }
    }
}

/// Canonical hashable form of an exact value. Values with a non-negative
/// numerator and both parts below 2^128 are always `Small`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RatKey {
    Small(u128, u128),
    Big(Rat),
}

impl RatKey {
    pub fn from_rat(r: Rat) -> Self {
        if !r.is_negative() {
            if let (Some(p), Some(q)) = (r.numer().to_u128(), r.denom().to_u128()) {
                return RatKey::Small(p, q);
            }
        }
        RatKey::Big(r)
    }

    pub fn to_rat(&self) -> Rat {
        match self {
            RatKey::Small(p, q) => Rat::new(BigInt::from(*p), BigInt::from(*q)),
            RatKey::Big(r) => r.clone(),
        }
    }
}

impl fmt::Display for RatKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatKey::Small(p, 1) => write!(f, "{p}"),
            RatKey::Small(p, q) => write!(f, "{p}/{q}"),
            RatKey::Big(r) => f.write_str(&fmt_rat(r)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub mode: ScanMode,
    /// Smallest argument scanned.
    pub start: u64,
    /// Worker threads; `0` uses the rayon default.
    pub jobs: usize,
    pub chunk_size: u64,
    /// Cap on listed pairs; the pair count stays exact.
    pub pair_limit: usize,
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many chunks in total (for interrupting on purpose).
    pub stop_after_chunks: Option<u64>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            mode: ScanMode::All,
            start: 1,
            jobs: 0,
            chunk_size: 1 << 16,
            pair_limit: 10_000,
            checkpoint: None,
            stop_after_chunks: None,
        }
    }
}

impl ScanOptions {
    pub fn mode(mode: ScanMode) -> Self {
        ScanOptions {
            mode,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    pub x: u64,
    pub y: u64,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionGroup {
    pub value: String,
    pub members: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub version: u32,
    pub func: String,
    pub start: u64,
    pub max: u64,
    pub mode: ScanMode,
    pub chunk_size: u64,
    pub chunks: u64,
    /// Arguments that entered the comparison.
    pub evaluated: u64,
    /// Value classes holding at least one qualifying pair.
    pub groups: Vec<CollisionGroup>,
    pub pair_count: u64,
    pub collisions: Vec<Collision>,
    pub truncated: bool,
    /// Every group member was recomputed from a trial-division
    /// factorization and matched its group value.
    pub verified: bool,
    /// False when the scan stopped early at a checkpoint.
    pub complete: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ScanReport {
    /// Do `x` and `y` share a reported value class?
    pub fn contains_pair(&self, x: u64, y: u64) -> bool {
        self.groups
            .iter()
            .any(|g| g.members.binary_search(&x).is_ok() && g.members.binary_search(&y).is_ok())
    }

    pub fn value_of_pair(&self, x: u64, y: u64) -> Option<&str> {
        self.groups
            .iter()
            .find(|g| g.members.binary_search(&x).is_ok() && g.members.binary_search(&y).is_ok())
            .map(|g| g.value.as_str())
    }

    pub fn is_empty(&self) -> bool {
        self.pair_count == 0
    }

    /// JSON with deterministic bytes (no timing).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `x,y,value` rows of the listed pairs.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,y,value\n");
        for c in &self.collisions {
            s.push_str(&format!("{},{},{}\n", c.x, c.y, c.value));
        }
        s
    }
}

fn eval_key(f: &ArithmeticFunction, x: u64, sieve: &LinearSieve) -> Result<RatKey> {
    let fac = sieve.factor(x);
    if let Some((p, q)) = f.eval_small(x, &fac) {
        return Ok(RatKey::Small(p, q));
    }
    Ok(RatKey::from_rat(f.exact_factored(x, &fac)?))
}

fn chunk_values(
    f: &ArithmeticFunction,
    sieve: &LinearSieve,
    lo: u64,
    hi: u64,
    mode: ScanMode,
) -> Result<Vec<Option<RatKey>>> {
    (lo..=hi)
        .map(|x| {
            if mode == ScanMode::Squarefree && !sieve.factor(x).is_squarefree() {
                return Ok(None);
            }
            eval_key(f, x, sieve).map(Some)
        })
        .collect()
}

/// Exact collision scan of `f` on `[start, max]`.
///
/// Values come from a smallest-prime-factor sieve and are grouped by
/// exact value. Chunks are evaluated in parallel waves and merged in
/// chunk order, so the report does not depend on `jobs`.
pub fn scan_collisions(f: &ArithmeticFunction, max: u64, opts: &ScanOptions) -> Result<ScanReport> {
    let t0 = Instant::now();
    if f.is_order_key() {
        return Err(Error::OrderKeyInArithmetic(f.name().to_string()));
    }
    if max < 2 {
        return Err(Error::OutOfDomain { min: 2, got: max });
    }
    let start = opts.start.max(1);
    if start > max {
        return Err(Error::EmptyWindow(start as i64, max as i64));
    }
    if opts.chunk_size == 0 {
        return Err(Error::Invalid("chunk size must be positive".into()));
    }
    let sieve = LinearSieve::new(max)?;
    let cs = opts.chunk_size;
    let total_chunks = (max - start) / cs + 1;
    let chunk_bounds = |c: u64| (start + c * cs, (start + (c + 1) * cs - 1).min(max));

    let mut values: Vec<Option<RatKey>> = Vec::with_capacity((max - start + 1) as usize);
    let mut next_chunk = 0u64;
    if let Some(path) = &opts.checkpoint {
        if path.exists() {
            let cp = Checkpoint::load(path)?;
            cp.check_matches(f.name(), start, max, opts.mode, cs)?;
            values = cp
                .values
                .iter()
                .map(|v| v.as_deref().map(parse_key).transpose())
                .collect::<Result<_>>()?;
            next_chunk = cp.last_chunk.map_or(0, |c| c + 1);
            let expected = if next_chunk == 0 {
                0
            } else {
                chunk_bounds(next_chunk - 1).1 - start + 1
            };
            if values.len() as u64 != expected {
                return Err(Error::Checkpoint(format!(
                    "checkpoint holds {} values, expected {expected}",
                    values.len()
                )));
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let wave = pool.current_num_threads().max(1) as u64 * 2;
    let stop = opts.stop_after_chunks.unwrap_or(u64::MAX).min(total_chunks);
    while next_chunk < stop {
        let end = (next_chunk + wave).min(stop);
        let parts: Vec<Result<Vec<Option<RatKey>>>> = pool.install(|| {
            (next_chunk..end)
                .into_par_iter()
                .map(|c| {
                    let (lo, hi) = chunk_bounds(c);
                    chunk_values(f, &sieve, lo, hi, opts.mode)
                })
                .collect()
        });
        for part in parts {
            values.extend(part?);
        }
        next_chunk = end;
        if let Some(path) = &opts.checkpoint {
            Checkpoint {
                version: SCHEMA_VERSION,
                func: f.name().to_string(),
                start,
                max,
                mode: opts.mode,
                chunk_size: cs,
                last_chunk: Some(next_chunk - 1),
                values: values
                    .iter()
                    .map(|v| v.as_ref().map(|k| k.to_string()))
                    .collect(),
            }
            .save(path)?;
        }
    }
    let complete = next_chunk == total_chunks;
    let mut report = collect_report(f, start, max, opts, total_chunks, &values)?;
    report.complete = complete;
    report.elapsed = t0.elapsed();
    Ok(report)
}

fn parse_key(s: &str) -> Result<RatKey> {
    Ok(RatKey::from_rat(parse_rat(s)?))
}

fn collect_report(
    f: &ArithmeticFunction,
    start: u64,
    max: u64,
    opts: &ScanOptions,
    chunks: u64,
    values: &[Option<RatKey>],
) -> Result<ScanReport> {
    let mut first: HashMap<&RatKey, u64> = HashMap::new();
    let mut groups: HashMap<u64, Vec<u64>> = HashMap::new();
    let mut evaluated = 0u64;
    for (i, v) in values.iter().enumerate() {
        let Some(k) = v else { continue };
        evaluated += 1;
        let x = start + i as u64;
        let head = *first.entry(k).or_insert(x);
        if head != x {
            groups.entry(head).or_insert_with(|| vec![head]).push(x);
        }
    }
    let mut heads: Vec<u64> = groups.keys().copied().collect();
    heads.sort_unstable();

    let mut out_groups = Vec::new();
    let mut collisions = Vec::new();
    let mut pair_count = 0u64;
    let mut verified = true;
    for head in heads {
        let members = &groups[&head];
        let key = values[(head - start) as usize]
            .as_ref()
            .expect("group head has a value");
        let n_pairs = match opts.mode {
            ScanMode::Coprime => {
                let mut c = 0u64;
                for (i, &x) in members.iter().enumerate() {
                    for &y in &members[i + 1..] {
                        if gcd_u64(x, y) == 1 {
                            c += 1;
                            if collisions.len() < opts.pair_limit {
                                collisions.push((x, y, key));
                            }
                        }
                    }
                }
                c
            }
            _ => {
                let k = members.len() as u64;
                'outer: for (i, &x) in members.iter().enumerate() {
                    for &y in &members[i + 1..] {
                        if collisions.len() >= opts.pair_limit {
                            break 'outer;
                        }
                        collisions.push((x, y, key));
                    }
                }
                k * (k - 1) / 2
            }
        };
        if n_pairs == 0 {
            continue;
        }
        pair_count += n_pairs;
        let expected = key.to_rat();
        for &x in members {
            if f.eval_exact(x)? != expected
                || (opts.mode == ScanMode::Squarefree && !factorize(x)?.is_squarefree())
            {
                verified = false;
            }
        }
        out_groups.push(CollisionGroup {
            value: key.to_string(),
            members: members.clone(),
        });
    }
    let truncated = (collisions.len() as u64) < pair_count;
    let collisions = collisions
        .into_iter()
        .map(|(x, y, k)| Collision {
            x,
            y,
            value: k.to_string(),
        })
        .collect();
    if !verified {
        return Err(Error::Invalid(format!(
            "sieve values of {} disagree with direct evaluation",
            f.name()
        )));
    }
    Ok(ScanReport {
        version: SCHEMA_VERSION,
        func: f.name().to_string(),
        start,
        max,
        mode: opts.mode,
        chunk_size: opts.chunk_size,
        chunks,
        evaluated,
        groups: out_groups,
        pair_count,
        collisions,
        truncated,
        verified,
        complete: true,
        elapsed: Duration::ZERO,
    })
}
