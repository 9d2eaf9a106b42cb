use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

/// Prime factorization as `(prime, exponent)` pairs, strictly increasing
/// by prime. The empty list is the factorization of 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// Caller guarantees sorted distinct primes with positive exponents.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(pairs.iter().all(|&(_, e)| e > 0));
        Factorization { pairs }
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Product of the prime powers.
    pub fn value(&self) -> BigUint {
        self.pairs.iter().fold(BigUint::from(1u32), |acc, &(p, e)| {
            acc * BigUint::from(p).pow(e)
        })
    }

    /// Ω: prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u64 {
        self.pairs.iter().map(|&(_, e)| e as u64).sum()
    }

    /// ω: distinct prime factors.
    pub fn omega(&self) -> u64 {
        self.pairs.len() as u64
    }

    pub fn is_squarefree(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e == 1)
    }

    /// Number of divisors, ∏(α+1).
    pub fn divisor_count(&self) -> u64 {
        self.pairs.iter().map(|&(_, e)| e as u64 + 1).product()
    }
}

/// A deterministic factoring strategy.
pub trait Factorizer {
    fn factor(&self, n: u64) -> Result<Factorization>;
}

/// Trial division over a 2·3·5 wheel up to `limit`. A cofactor left after
/// the limit is accepted when it is provably prime.
#[derive(Debug, Clone, Copy)]
pub struct TrialDivision {
    pub limit: u64,
}

impl Default for TrialDivision {
    fn default() -> Self {
        TrialDivision { limit: 100_000_000 }
    }
}

const WHEEL_STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];

impl Factorizer for TrialDivision {
    fn factor(&self, n: u64) -> Result<Factorization> {
        if n == 0 {
            return Err(Error::OutOfDomain { min: 1, got: 0 });
        }
        let mut rest = n;
        let mut pairs = Vec::new();
        let mut take = |rest: &mut u64, p: u64| {
            let mut e = 0;
            while *rest % p == 0 {
                *rest /= p;
                e += 1;
            }
            if e > 0 {
                pairs.push((p, e));
            }
        };
        for p in [2, 3, 5] {
            take(&mut rest, p);
        }
        let mut d = 7u64;
        let mut step = 0;
        while d <= self.limit && d.saturating_mul(d) <= rest {
            take(&mut rest, d);
            d += WHEEL_STEPS[step];
            step = (step + 1) % WHEEL_STEPS.len();
        }
        if rest > 1 {
            let exhausted = d.saturating_mul(d) > rest;
            if !exhausted && !is_prime(rest) {
                return Err(Error::FactorizationLimit(n));
            }
            pairs.push((rest, 1));
        }
        Ok(Factorization { pairs })
    }
}

/// Factor with the default trial-division strategy.
pub fn factorize(n: u64) -> Result<Factorization> {
    TrialDivision::default().factor(n)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for every `u64` (Miller–Rabin with the first
/// twelve prime bases, which has no pseudoprimes below 3.3·10²⁴).
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    // Plain trial division by every integer, no wheel.
    fn oracle(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn named_examples() {
        assert_eq!(factorize(12).unwrap().pairs(), &[(2, 2), (3, 1)]);
        assert!(factorize(1).unwrap().is_one());
        assert_eq!(oracle(30000), vec![(2, 4), (3, 1), (5, 4)]);
        assert_eq!(factorize(30000).unwrap().pairs(), &[(2, 4), (3, 1), (5, 4)]);
        assert_eq!(factorize(0), Err(Error::OutOfDomain { min: 1, got: 0 }));
    }

    #[test]
    fn matches_oracle_and_reconstructs() {
        for n in 1..=10_000u64 {
            let f = factorize(n).unwrap();
            assert_eq!(f.pairs(), oracle(n).as_slice(), "n={n}");
            assert_eq!(f.value(), BigUint::from(n));
            assert!(f.iter().all(|(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn large_inputs() {
        // 2^61-1 is prime; product of two primes above the default bound.
        let m61 = (1u64 << 61) - 1;
        assert_eq!(factorize(m61).unwrap().pairs(), &[(m61, 1)]);
        let small = TrialDivision { limit: 1000 };
        let semi = 1_000_003u64 * 1_000_033;
        assert_eq!(small.factor(semi), Err(Error::FactorizationLimit(semi)));
        assert_eq!(
            factorize(semi).unwrap().pairs(),
            &[(1_000_003, 1), (1_000_033, 1)]
        );
        assert_eq!(
            small.factor(1_000_003 * 4).unwrap().pairs(),
            &[(2, 2), (1_000_003, 1)]
        );
    }

    #[test]
    fn primality_agrees_with_trial_division() {
        for n in 0..20_000u64 {
            let by_trial = n >= 2 && oracle(n) == vec![(n, 1)];
            assert_eq!(is_prime(n), by_trial, "n={n}");
        }
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(is_prime(18_446_744_073_709_551_557));
    }
}
