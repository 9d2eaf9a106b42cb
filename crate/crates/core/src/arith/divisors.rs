use serde::Serialize;

use super::factor::{factorize, Factorization};
use crate::error::Result;

/// `D_n` together with the prime powers `P*_n` dividing `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorSet {
    pub n: u64,
    pub divisors: Vec<u64>,
    pub prime_powers: Vec<u64>,
    #[serde(skip)]
    pub factorization: Factorization,
}

impl DivisorSet {
    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Position of `d` in the sorted divisor list.
    pub fn index_of(&self, d: u64) -> Option<usize> {
        self.divisors.binary_search(&d).ok()
    }

    pub fn contains(&self, d: u64) -> bool {
        self.index_of(d).is_some()
    }

    /// Distinct prime divisors of `n`.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factorization.iter().map(|(p, _)| p)
    }
}

pub fn divisor_set(n: u64) -> Result<DivisorSet> {
    let factorization = factorize(n)?;
    let mut divisors = vec![1u64];
    let mut prime_powers = Vec::new();
    for (p, e) in factorization.iter() {
        let base = divisors.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            prime_powers.push(pk);
            for i in 0..base {
                divisors.push(divisors[i] * pk);
            }
        }
    }
    divisors.sort_unstable();
    prime_powers.sort_unstable();
    Ok(DivisorSet {
        n,
        divisors,
        prime_powers,
        factorization,
    })
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `gcd(|x|, n)`, with `gcd(0, n) = n`; always an element of `D_n`.
pub fn gcd_z(x: i64, n: u64) -> u64 {
    gcd_u64(x.unsigned_abs(), n)
}

/// Squarefree kernel: product of the distinct primes dividing `n`.
pub fn rad(n: u64) -> Result<u64> {
    Ok(factorize(n)?.iter().map(|(p, _)| p).product())
}
