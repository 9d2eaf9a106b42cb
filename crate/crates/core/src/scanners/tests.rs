use proptest::prelude::*;

use super::*;
use crate::arith::{factorize, partition_counts};
use crate::functions::{catalog, parse_function};

fn f(name: &str) -> crate::functions::ArithmeticFunction {
    parse_function(name).unwrap()
}

fn scan(name: &str, max: u64, mode: ScanMode) -> ScanReport {
    scan_collisions(&f(name), max, &ScanOptions::mode(mode)).unwrap()
}

#[test]
fn sieve_matches_factorization() {
    let s = LinearSieve::new(5000).unwrap();
    assert_eq!(&s.primes()[..6], &[2, 3, 5, 7, 11, 13]);
    let (sigma, phi, tau, mu2) = (s.sigma_table(), s.phi_table(), s.tau_table(), s.mu2_table());
    let (big, small) = (s.big_omega_table(), s.omega_table());
    for x in 1..=5000u64 {
        assert_eq!(s.factor(x), factorize(x).unwrap(), "{x}");
        let ev = |name: &str| f(name).eval_exact(x).unwrap();
        let i = x as usize;
        assert_eq!(crate::arith::rat_int(sigma[i]), ev("sigma"), "{x}");
        assert_eq!(crate::arith::rat_int(phi[i]), ev("phi"), "{x}");
        assert_eq!(crate::arith::rat_int(tau[i]), ev("nd"), "{x}");
        assert_eq!(crate::arith::rat_int(mu2[i]), ev("mu2"), "{x}");
        assert_eq!(crate::arith::rat_int(big[i]), ev("bigomega"), "{x}");
        assert_eq!(crate::arith::rat_int(small[i]), ev("omega"), "{x}");
    }
    assert!(LinearSieve::new(SIEVE_LIMIT + 1).is_err());
}

#[test]
fn rat_keys_are_canonical() {
    let k = RatKey::from_rat(crate::arith::rat(12, 5));
    assert_eq!(k, RatKey::Small(12, 5));
    assert_eq!(k.to_string(), "12/5");
    assert!(matches!(
        RatKey::from_rat(crate::arith::rat(-1, 2)),
        RatKey::Big(_)
    ));
    assert_eq!(RatKey::from_rat(k.to_rat()), k);
}

#[test]
fn abundancy_collisions() {
    let r = scan("sigma_over_x", 200, ScanMode::All);
    assert_eq!(r.value_of_pair(6, 28), Some("2"));
    assert_eq!(r.value_of_pair(30, 140), Some("12/5"));
    assert!(!r.contains_pair(30, 120));
    assert!(r.verified && r.complete);
    assert!(r.collisions.iter().all(|c| c.x < c.y));
    let r = scan("sigma_over_x", 1000, ScanMode::All);
    assert_eq!(r.value_of_pair(120, 672), Some("3"));
}

#[test]
fn normalized_divisor_count() {
    let r = scan("nd_over_x", 100, ScanMode::All);
    assert_eq!(r.value_of_pair(1, 2), Some("1"));
    assert_eq!(r.value_of_pair(8, 12), Some("1/2"));
    let r = scan("nd_over_x2", 36_000, ScanMode::All);
    assert!(r.contains_pair(30_000, 36_000));
    let expected = crate::arith::rat(1, 2i64.pow(7) * 9 * 5i64.pow(6));
    assert_eq!(
        r.value_of_pair(30_000, 36_000),
        Some(crate::arith::fmt_rat(&expected).as_str())
    );
}

#[test]
fn totient_ratio() {
    assert!(scan("phi_over_x", 100, ScanMode::Coprime).is_empty());
    assert_eq!(
        scan("phi_over_x", 100, ScanMode::All).value_of_pair(6, 12),
        Some("1/3")
    );
}

#[test]
fn named_equalities() {
    let cases: &[(&str, u64, u64, &str)] = &[
        ("sigma", 6, 11, "12"),
        ("nd", 14, 15, "4"),
        ("phi", 1, 2, "1"),
        ("phi", 13, 21, "12"),
        ("bigupsilon", 7, 10, "7"),
        ("upsilon", 5, 6, "5"),
        ("bigomega", 14, 15, "2"),
        ("omega", 3, 5, "1"),
        ("ld", 4, 27, "1"),
        ("pillai", 15, 23, "45"),
        ("pillai_normalized", 2, 15, "3/4"),
    ];
    for &(name, x, y, v) in cases {
        let r = scan(name, 200, ScanMode::All);
        assert_eq!(r.value_of_pair(x, y), Some(v), "{name}({x}) = {name}({y})");
    }
}

#[test]
fn lemma_backed_empty_scans() {
    let n = 10_000;
    for (name, mode) in [
        ("sigma_over_x", ScanMode::Squarefree),
        ("sigma_over_x2", ScanMode::Coprime),
        ("phi_over_x", ScanMode::Coprime),
        ("phi_over_x2", ScanMode::Coprime),
        ("nd_over_x2", ScanMode::Coprime),
        ("ld", ScanMode::Squarefree),
        ("recip", ScanMode::All),
        ("sigma_over_x2", ScanMode::All),
    ] {
        assert!(scan(name, n, mode).is_empty(), "{name} {mode}");
    }
    let opts = ScanOptions {
        start: 2,
        ..ScanOptions::mode(ScanMode::Coprime)
    };
    assert!(scan_collisions(&f("nd_over_x"), n, &opts)
        .unwrap()
        .is_empty());
    // With 1 included, nd(1)/1 = nd(2)/2.
    assert!(scan("nd_over_x", n, ScanMode::Coprime).contains_pair(1, 2));
}

#[test]
fn reciprocal_scans_agree() {
    let a = scan("sigma_over_x", 5000, ScanMode::All);
    let b = scan("x_over_sigma", 5000, ScanMode::All);
    let pairs = |r: &ScanReport| {
        r.groups
            .iter()
            .map(|g| g.members.clone())
            .collect::<Vec<_>>()
    };
    assert_eq!(pairs(&a), pairs(&b));
    assert_eq!(a.pair_count, b.pair_count);
}

#[test]
fn thread_count_does_not_change_bytes() {
    for (name, mode) in [
        ("sigma_over_x", ScanMode::All),
        ("bigomega", ScanMode::Coprime),
        ("ld", ScanMode::Squarefree),
    ] {
        let run = |jobs| {
            let opts = ScanOptions {
                jobs,
                chunk_size: 777,
                pair_limit: 500,
                ..ScanOptions::mode(mode)
            };
            scan_collisions(&f(name), 20_000, &opts).unwrap().to_json()
        };
        let one = run(1);
        assert_eq!(one, run(2));
        assert_eq!(one, run(8));
    }
}

#[test]
fn pair_limit_keeps_exact_count() {
    let opts = ScanOptions {
        pair_limit: 10,
        ..Default::default()
    };
    let r = scan_collisions(&f("bigomega"), 1000, &opts).unwrap();
    assert_eq!(r.collisions.len(), 10);
    assert!(r.truncated);
    let s = LinearSieve::new(1000).unwrap().big_omega_table();
    let mut counts = std::collections::HashMap::new();
    for x in 1..=1000usize {
        *counts.entry(s[x]).or_insert(0u64) += 1;
    }
    assert_eq!(
        r.pair_count,
        counts.values().map(|k| k * (k - 1) / 2).sum::<u64>()
    );
}

#[test]
fn checkpoint_resume() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.json");
    let base = ScanOptions {
        chunk_size: 1000,
        jobs: 2,
        ..ScanOptions::mode(ScanMode::Coprime)
    };
    let full = scan_collisions(&f("phi_over_x2"), 12_345, &base).unwrap();

    let first = ScanOptions {
        checkpoint: Some(path.clone()),
        stop_after_chunks: Some(5),
        ..base.clone()
    };
    let partial = scan_collisions(&f("phi_over_x2"), 12_345, &first).unwrap();
    assert!(!partial.complete);
    let cp = Checkpoint::load(&path).unwrap();
    assert_eq!(cp.last_chunk, Some(4));
    assert_eq!(cp.values.len(), 5000);

    let second = ScanOptions {
        checkpoint: Some(path.clone()),
        ..base.clone()
    };
    let resumed = scan_collisions(&f("phi_over_x2"), 12_345, &second).unwrap();
    assert!(resumed.complete);
    assert_eq!(resumed.to_json(), full.to_json());

    let wrong = scan_collisions(&f("sigma_over_x2"), 12_345, &second);
    assert!(matches!(wrong, Err(crate::error::Error::Checkpoint(_))));
}

#[test]
fn scan_rejections() {
    assert!(matches!(
        scan_collisions(&f("log"), 100, &ScanOptions::default()),
        Err(crate::error::Error::OrderKeyInArithmetic(_))
    ));
    assert!(scan_collisions(&f("sigma"), 1, &ScanOptions::default()).is_err());
    assert_eq!("coprime".parse::<ScanMode>().unwrap(), ScanMode::Coprime);
    assert!("odd".parse::<ScanMode>().is_err());
}

#[test]
fn multiperfect_hits() {
    let r = scan_multiperfect(10_000).unwrap();
    let hits: Vec<(u64, u64)> = r.hits.iter().map(|h| (h.x, h.k)).collect();
    assert_eq!(
        hits,
        vec![(6, 2), (28, 2), (120, 3), (496, 2), (672, 3), (8128, 2)]
    );
    assert!(r.all_even);
    assert!(scan_multiperfect(5).unwrap().hits.is_empty());
}

#[test]
fn bounds() {
    let b = partition_bounds(12).unwrap();
    assert_eq!(b.to_json(), r#"{"p_nd": 7, "p_omega": 2}"#);
    let b = partition_bounds(13).unwrap();
    assert_eq!(
        (b.p_nd.clone(), b.p_omega.clone()),
        (1u32.into(), 1u32.into())
    );
    let b = partition_bounds(360).unwrap();
    assert_eq!((b.p_nd, b.p_omega), (1255u32.into(), 7u32.into()));
    assert!(partition_bounds(1).is_err());
}

#[test]
fn census_on_six() {
    let funcs: Vec<_> = ["recip", "one", "chi:6", "pow2neg:bigomega"]
        .iter()
        .map(|s| f(s))
        .collect();
    let r = partition_census(6, &funcs).unwrap();
    assert_eq!(r.distinct, 4);
    let expect = |blocks: &[&[u64]]| {
        crate::orders::DivisorPartition::new(6, blocks.iter().map(|b| b.to_vec()).collect())
    };
    assert!(r.partitions.contains(&expect(&[&[1], &[2], &[3], &[6]])));
    assert!(r.partitions.contains(&expect(&[&[1, 2, 3, 6]])));
    assert!(r.partitions.contains(&expect(&[&[1], &[2, 3, 6]])));
    assert!(r.partitions.contains(&expect(&[&[1], &[2, 3], &[6]])));
}

#[test]
fn census_on_prime() {
    let r = partition_census(13, &catalog(&[13])).unwrap();
    assert_eq!(r.distinct, 2);
    assert_eq!(r.distinct_shapes, 1);
    assert!(r.within_bound);
}

#[test]
fn set_partitions_outnumber_the_bound() {
    // Four set partitions of D_6 against p(3) = 3; their profiles on {2, 3, 6}
    // are [1,1,1], [3], [1,2], [3].
    let funcs: Vec<_> = ["recip", "one", "chi:6", "pow2neg:bigomega"]
        .iter()
        .map(|s| f(s))
        .collect();
    let r = partition_census(6, &funcs).unwrap();
    assert_eq!(r.distinct, 4);
    assert_eq!(r.bound_nd, "3");
    assert_eq!(r.distinct_shapes, 3);
    assert!(r.within_bound);
}

#[test]
fn shapes_drop_one() {
    let p = crate::orders::DivisorPartition::new(12, vec![vec![1, 2], vec![3, 4, 6], vec![12]]);
    assert_eq!(shape_without_one(&p), vec![1, 1, 3]);
}

#[test]
fn census_over_catalog() {
    for n in [6u64, 12, 30] {
        let r = partition_census(n, &catalog(&[n])).unwrap();
        let bound: u64 = r.bound_nd.parse().unwrap();
        assert!(
            r.distinct_shapes as u64 <= bound,
            "n = {n}: {} > {bound}",
            r.distinct_shapes
        );
        assert!(r.within_bound);
        assert_eq!(r.tested.len() + r.skipped.len(), catalog(&[n]).len());
    }
    assert_eq!(partition_counts(40).len(), 41);
}

proptest! {
    #[test]
    fn chunking_is_invisible(max in 2u64..3000, chunk in 1u64..500, jobs in 1usize..5) {
        let a = scan_collisions(&f("phi_over_x"), max, &ScanOptions::mode(ScanMode::All)).unwrap();
        let opts = ScanOptions { chunk_size: chunk, jobs, ..ScanOptions::mode(ScanMode::All) };
        let b = scan_collisions(&f("phi_over_x"), max, &opts).unwrap();
        prop_assert_eq!(a.groups, b.groups);
        prop_assert_eq!(a.pair_count, b.pair_count);
    }
}
