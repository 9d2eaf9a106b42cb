use num_bigint::BigInt;
use num_bigint::BigUint;
use num_traits::{Signed, Zero};

/// `p(0), …, p(k)` by Euler's pentagonal number recurrence.
pub fn partition_counts(k: usize) -> Vec<BigUint> {
    let mut p: Vec<BigInt> = Vec::with_capacity(k + 1);
    p.push(BigInt::from(1));
    for m in 1..=k {
        let mut acc = BigInt::zero();
        for j in 1.. {
            let j = j as usize;
            let g1 = j * (3 * j - 1) / 2;
            if g1 > m {
                break;
            }
            let sign_add = j % 2 == 1;
            let mut term = p[m - g1].clone();
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= m {
                term += &p[m - g2];
            }
            if sign_add {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p.into_iter()
        .map(|v| {
            debug_assert!(!v.is_negative());
            v.to_biguint().expect("partition counts are non-negative")
        })
        .collect()
}

/// Number of integer partitions of `k`; `p(0) = 1`.
pub fn partition_count(k: u64) -> BigUint {
    partition_counts(k as usize).pop().expect("non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;

    // Count partitions of `n` into parts no larger than `max` by recursion.
    fn enumerate(n: u64, max: u64) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|part| enumerate(n - part, part)).sum()
    }

    #[test]
    fn small_values() {
        assert_eq!(partition_count(0), BigUint::from(1u32));
        assert_eq!(enumerate(5, 5), 7);
        assert_eq!(partition_count(5), BigUint::from(7u32));
        assert_eq!(enumerate(10, 10), 42);
        assert_eq!(partition_count(10), BigUint::from(42u32));
        assert_eq!(partition_count(23), BigUint::from(1255u32));
    }

    #[test]
    fn recurrence_matches_enumeration_up_to_40() {
        let table = partition_counts(40);
        for k in 0..=40u64 {
            assert_eq!(table[k as usize], BigUint::from(enumerate(k, k)), "k={k}");
        }
    }

    #[test]
    fn large_argument_stays_exact() {
        // p(200) = 3972999029388
        assert_eq!(partition_count(200), BigUint::from(3_972_999_029_388u64));
    }
}
