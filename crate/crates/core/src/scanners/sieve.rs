use crate::arith::Factorization;
use crate::error::{Error, Result};

/// Linear sieve of smallest prime factors on `[0, max]`.
#[derive(Debug, Clone)]
pub struct LinearSieve {
    max: u64,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

/// Largest bound the sieve accepts.
pub const SIEVE_LIMIT: u64 = 100_000_000;

impl LinearSieve {
    pub fn new(max: u64) -> Result<Self> {
        if max > SIEVE_LIMIT {
            return Err(Error::Invalid(format!(
                "sieve bound {max} exceeds {SIEVE_LIMIT}"
            )));
        }
        let m = max as usize;
        let mut spf = vec![0u32; m + 1];
        let mut primes = Vec::new();
        for i in 2..=m {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let j = i * p as usize;
                if p > si || j > m {
                    break;
                }
                spf[j] = p;
            }
        }
        Ok(LinearSieve { max, spf, primes })
    }

    pub fn max(&self) -> u64 {
        self.max
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// Smallest prime factor; 0 for 0 and 1.
    pub fn spf(&self, x: u64) -> u64 {
        self.spf[x as usize] as u64
    }

    /// Factorization of `1 ≤ x ≤ max` by repeated smallest-factor division.
    pub fn factor(&self, x: u64) -> Factorization {
        debug_assert!(x >= 1 && x <= self.max);
        let mut pairs: Vec<(u64, u32)> = Vec::new();
        let mut r = x;
        while r > 1 {
            let p = self.spf(r);
            let mut e = 0;
            while r % p == 0 {
                r /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
        Factorization::from_pairs(pairs)
    }

    /// Multiplicative table from `g(p^e)` given `(p, e, p^e)`, built in one
    /// linear pass: `x = p^e · m` with `p = spf(x)`, `p ∤ m`.
    fn multiplicative_table(&self, local: impl Fn(u64, u32, u64) -> u64) -> Vec<u64> {
        let m = self.max as usize;
        let mut out = vec![0u64; m + 1];
        if m >= 1 {
            out[1] = 1;
        }
        // Largest power of spf(x) dividing x, and its exponent.
        let mut pk = vec![0u64; m + 1];
        let mut ek = vec![0u32; m + 1];
        for x in 2..=m {
            let p = self.spf[x] as usize;
            let rest = x / p;
            if rest % p == 0 {
                pk[x] = pk[rest] * p as u64;
                ek[x] = ek[rest] + 1;
            } else {
                pk[x] = p as u64;
                ek[x] = 1;
            }
            let cof = x / pk[x] as usize;
            out[x] = local(p as u64, ek[x], pk[x]) * out[cof];
        }
        out
    }

    /// `σ(x)` for `x ≤ max`.
    pub fn sigma_table(&self) -> Vec<u64> {
        self.multiplicative_table(|p, _, q| (q * p - 1) / (p - 1))
    }

    /// `φ(x)` for `x ≤ max`.
    pub fn phi_table(&self) -> Vec<u64> {
        self.multiplicative_table(|p, _, q| q - q / p)
    }

    /// `τ(x)` for `x ≤ max`.
    pub fn tau_table(&self) -> Vec<u64> {
        self.multiplicative_table(|_, e, _| e as u64 + 1)
    }

    /// `μ²(x)` for `x ≤ max`.
    pub fn mu2_table(&self) -> Vec<u64> {
        self.multiplicative_table(|_, e, _| (e == 1) as u64)
    }

    /// `Ω(x)` for `x ≤ max`.
    pub fn big_omega_table(&self) -> Vec<u32> {
        let m = self.max as usize;
        let mut out = vec![0u32; m + 1];
        for x in 2..=m {
            out[x] = out[x / self.spf[x] as usize] + 1;
        }
        out
    }

    /// `ω(x)` for `x ≤ max`.
    pub fn omega_table(&self) -> Vec<u32> {
        let m = self.max as usize;
        let mut out = vec![0u32; m + 1];
        for x in 2..=m {
            let p = self.spf[x] as usize;
            let rest = x / p;
            out[x] = out[rest] + (rest % p != 0) as u32;
        }
        out
    }
}
