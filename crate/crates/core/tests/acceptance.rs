//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::BTreeMap;
use std::time::Instant;

use divorder::arith::{partition_counts, rat, Rat};
use divorder::functions::{
    catalog, from_prime_power_values, parse_function, ArithmeticFunction, ExtensionKind,
};
use divorder::metrics::{
    build_table, verify_indiscernibles, verify_indiscernibles_window, verify_pseudometric,
    Combinator, PseudometricSpec,
};
use divorder::orders::{
    compare_quotients, extend_to_window, induced_preorder, permutation_invariance,
    quotient_by_metric, quotient_by_preorder, refinement_check, triple_equivalence_explicit,
};
use divorder::scanners::{
    partition_bounds, partition_census, scan_collisions, scan_multiperfect, ScanMode, ScanOptions,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn f(name: &str) -> ArithmeticFunction {
    parse_function(name).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn moduli() -> Vec<u64> {
    (2..=60).chain([120, 360, 2310, 5040]).collect()
}

const BASE: [Combinator; 4] = [
    Combinator::AddF,
    Combinator::AddG,
    Combinator::AddH,
    Combinator::MulH,
];
const DELTA: [Combinator; 3] = [
    Combinator::DeltaAddF,
    Combinator::DeltaAddH,
    Combinator::DeltaMulH,
];

fn axiom_matrix() -> Outcome {
    let mut tables = 0;
    for n in moduli() {
        for func in catalog(&[n]) {
            if func.is_order_key() {
                continue;
            }
            for c in BASE {
                let Ok(s) = PseudometricSpec::new(func.clone(), c, n) else {
                    continue;
                };
                let r = verify_pseudometric(&build_table(&s));
                ensure(r.is_pseudometric(), || {
                    format!("{} fails: {:?}", s.label(), r.triangle_witnesses.first())
                })?;
                tables += 1;
            }
        }
    }
    Ok(format!(
        "{tables} (function, combinator, n) tables pass identity, symmetry and every triangle"
    ))
}

fn delta_matrix_note() -> String {
    let mut failing: BTreeMap<String, Vec<u64>> = BTreeMap::new();
    let mut total = 0;
    for n in moduli() {
        for func in catalog(&[n]) {
            if func.is_order_key() {
                continue;
            }
            for c in DELTA {
                let Ok(s) = PseudometricSpec::new(func.clone(), c, n) else {
                    continue;
                };
                total += 1;
                if !verify_pseudometric(&build_table(&s)).is_pseudometric() {
                    let name = func.name().split(':').next().unwrap_or("").to_string();
                    failing.entry(format!("{name}/{c}")).or_default().push(n);
                }
            }
        }
    }
    let all_square_full = failing
        .values()
        .flatten()
        .all(|&n| !divorder::arith::factorize(n).unwrap().is_squarefree());
    let shown: Vec<String> = failing
        .iter()
        .map(|(k, ns)| format!("{k} (first n = {}, {} moduli)", ns[0], ns.len()))
        .collect();
    format!(
        "coprime-reduced forms: {} of {total} admitted tables violate the triangle inequality ({}): {}",
        failing.values().map(Vec::len).sum::<usize>(),
        if all_square_full { "every one at a non-squarefree n" } else { "including squarefree n" },
        shown.join("; ")
    )
}

fn metric_claims() -> Outcome {
    let metric_cases = [
        ("bigomega", Combinator::AddF),
        ("bigupsilon", Combinator::AddF),
        ("sigma", Combinator::AddG),
        ("pillai", Combinator::AddG),
        ("recip", Combinator::AddH),
        ("recip", Combinator::MulH),
        ("phi_over_x", Combinator::AddH),
        ("phi_over_x", Combinator::MulH),
        ("recip_sigma", Combinator::AddH),
        ("recip_sigma", Combinator::MulH),
    ];
    let mut checks = 0;
    for n in moduli() {
        for (name, c) in metric_cases {
            let s = PseudometricSpec::new(f(name), c, n).map_err(|e| e.to_string())?;
            ensure(
                verify_indiscernibles(&build_table(&s)).indiscernibles_ok,
                || format!("{} is not a metric", s.label()),
            )?;
            checks += 1;
        }
        let one = PseudometricSpec::new(f("one"), Combinator::AddH, n).unwrap();
        ensure(
            !verify_indiscernibles(&build_table(&one)).indiscernibles_ok,
            || format!("one is a metric at {n}"),
        )?;
        let chi = PseudometricSpec::new(f(&format!("chi:{n}")), Combinator::AddH, n).unwrap();
        let w = verify_indiscernibles_window(&chi, 1, 2 * n as i64).map_err(|e| e.to_string())?;
        ensure(!w.metric, || {
            format!("chi_{n} is a metric on [1, {}]", 2 * n)
        })?;
        let (x, y) = w.witness.unwrap();
        ensure(chi.distance(x, y) == rat(0, 1) && x != y, || {
            format!("bad witness {x}, {y}")
        })?;
        ensure(chi.distance(1, 1 + n as i64) == rat(0, 1), || {
            "x and x+n are separated".into()
        })?;
    }
    Ok(format!("{checks} metric checks on D_n; one fails on D_n and chi_n fails on [1, 2n] for every n tested"))
}

fn delta_counterexample() -> Outcome {
    let s = PseudometricSpec::unchecked(f("id"), Combinator::DeltaAddG, 24)
        .map_err(|e| e.to_string())?;
    let lhs = s.divisor_distance(2, 6) + s.divisor_distance(6, 24);
    let rhs = s.divisor_distance(2, 24);
    ensure(lhs == rat(5, 1) && rhs == rat(11, 1), || {
        format!("got {lhs} and {rhs}")
    })?;
    ensure(
        verify_pseudometric(&build_table(&s))
            .triangle_witnesses
            .contains(&(2, 6, 24)),
        || "no witness".into(),
    )?;
    let cases = [
        ("bigomega", Combinator::DeltaAddF),
        ("bigupsilon", Combinator::DeltaAddF),
        ("ld", Combinator::DeltaAddF),
        ("recip", Combinator::DeltaAddH),
        ("recip", Combinator::DeltaMulH),
        ("phi_over_x", Combinator::DeltaAddH),
        ("phi_over_x", Combinator::DeltaMulH),
    ];
    let mut tables = 0;
    for n in 2..=360 {
        for (name, c) in cases {
            let s = PseudometricSpec::new(f(name), c, n).map_err(|e| e.to_string())?;
            ensure(
                verify_pseudometric(&build_table(&s)).is_pseudometric(),
                || format!("{} fails", s.label()),
            )?;
            tables += 1;
        }
    }
    Ok(format!("d(2,6)+d(6,24) = 5 < 11 = d(2,24) at n = 24; {tables} coprime-reduced tables for n <= 360 pass"))
}

fn triple_equivalence() -> Outcome {
    for n in [6u64, 12, 30, 360] {
        for (ff, g, h) in [
            ("log", "id", "recip"),
            ("neglog:phi_over_x", "x_over_phi", "phi_over_x"),
        ] {
            let r =
                triple_equivalence_explicit(&f(ff), &f(g), &f(h), n).map_err(|e| e.to_string())?;
            ensure(r.identical, || {
                format!("({ff}, {g}, {h}) differ at n = {n}: {:?}", r.preorders)
            })?;
        }
    }
    Ok("rank vectors of all four preorders agree for both triples at n = 6, 12, 30, 360".into())
}

fn refinement_and_isomorphism() -> Outcome {
    let mut specs = 0;
    let mut skipped = 0;
    for n in (2..=60).chain([120, 360]) {
        for func in catalog(&[n]) {
            if func.is_order_key() {
                continue;
            }
            for c in BASE.iter().chain(DELTA.iter()) {
                let Ok(s) = PseudometricSpec::new(func.clone(), *c, n) else {
                    continue;
                };
                let t = build_table(&s);
                if !verify_pseudometric(&t).is_pseudometric() {
                    skipped += 1;
                    continue;
                }
                let qm = quotient_by_metric(&t);
                let qp = quotient_by_preorder(&induced_preorder(&s));
                ensure(refinement_check(&qm, &qp).unwrap(), || {
                    format!("{}: metric quotient not finer", s.label())
                })?;
                let w = extend_to_window(&qp, 1, 3 * n as i64).unwrap();
                ensure(w.block_count() == qp.len(), || {
                    format!("{}: window block count", s.label())
                })?;
                let wn = extend_to_window(&qp, -(n as i64), 2 * n as i64).unwrap();
                for x in -(n as i64)..=n as i64 {
                    ensure(wn.same_block(x, x + n as i64), || {
                        format!("{}: {x} vs {}", s.label(), x + n as i64)
                    })?;
                }
                specs += 1;
            }
        }
    }
    Ok(format!("{specs} pseudometric specs checked ({skipped} non-pseudometric coprime-reduced tables left out)"))
}

fn random_values(rng: &mut ChaCha8Rng, k: usize) -> Vec<Rat> {
    let mut vals: Vec<Rat> = Vec::new();
    while vals.len() < k {
        let den = rng.gen_range(2..10_000i64);
        let v = rat(rng.gen_range(1..den), den);
        if !vals.contains(&v) {
            vals.push(v);
        }
    }
    vals
}

fn permutation_invariance_check() -> Outcome {
    let h1 = from_prime_power_values(
        [(2, rat(3, 10)), (3, rat(6, 10))].into_iter().collect(),
        ExtensionKind::Multiplicative,
        6,
    )
    .unwrap();
    let h2 = from_prime_power_values(
        [(2, rat(2, 10)), (3, rat(5, 10))].into_iter().collect(),
        ExtensionKind::Multiplicative,
        6,
    )
    .unwrap();
    let c = compare_quotients(&h1, &h2, 6).map_err(|e| e.to_string())?;
    ensure(c.partitions_equal && !c.values_equal, || {
        "n = 6 pair differs".into()
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut structured_bad = 0;
    for n in [12u64, 60] {
        let pps = divorder::arith::divisor_set(n).unwrap().prime_powers;
        for trial in 0..100 {
            let vals = random_values(&mut rng, pps.len());
            let h = from_prime_power_values(
                pps.iter().copied().zip(vals.iter().cloned()).collect(),
                ExtensionKind::Multiplicative,
                n,
            )
            .unwrap();
            let mut shuffled = vals.clone();
            shuffled.shuffle(&mut rng);
            let perm: BTreeMap<Rat, Rat> = vals.iter().cloned().zip(shuffled).collect();
            let r = permutation_invariance(&h, &perm, n).map_err(|e| e.to_string())?;
            ensure(r.partitions_equal, || {
                format!("n = {n}, trial {trial}: partition changed")
            })?;

            // Values from a small pool create ties; the partition survives
            // exactly when the induced value map is well defined.
            let pool = [rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 6)];
            let vals: Vec<Rat> = pps
                .iter()
                .map(|_| pool[rng.gen_range(0..pool.len())].clone())
                .collect();
            let h = from_prime_power_values(
                pps.iter().copied().zip(vals.iter().cloned()).collect(),
                ExtensionKind::Multiplicative,
                n,
            )
            .unwrap();
            let mut distinct = vals.clone();
            distinct.sort();
            distinct.dedup();
            let mut shuffled = distinct.clone();
            shuffled.shuffle(&mut rng);
            let perm: BTreeMap<Rat, Rat> = distinct.into_iter().zip(shuffled).collect();
            let r = permutation_invariance(&h, &perm, n).map_err(|e| e.to_string())?;
            ensure(r.partitions_equal == r.extension_well_defined, || {
                format!("n = {n}: {r:?}")
            })?;
            structured_bad += (!r.partitions_equal) as usize;
        }
    }
    Ok(format!(
        "n = 6 pair equal; 200 generic permutations preserve the partition; {structured_bad} of 200 tied-value permutations change it, each with an ill-defined value map"
    ))
}

fn golden_scan(name: &str, max: u64, pairs: &[(u64, u64, &str)]) -> Result<(), String> {
    let t = Instant::now();
    let r = scan_collisions(&f(name), max, &ScanOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.verified, || format!("{name}: unverified"))?;
    for &(x, y, v) in pairs {
        ensure(r.value_of_pair(x, y) == Some(v), || {
            format!("{name}({x}) = {name}({y}) = {v} missing")
        })?;
    }
    ensure(t.elapsed().as_secs() < 30, || {
        format!("{name}: {:?}", t.elapsed())
    })
}

fn golden_examples() -> Outcome {
    let n = 100_000;
    golden_scan("sigma", n, &[(6, 11, "12")])?;
    golden_scan("nd", n, &[(14, 15, "4")])?;
    golden_scan("phi", n, &[(1, 2, "1"), (13, 21, "12")])?;
    golden_scan("bigupsilon", n, &[(7, 10, "7")])?;
    golden_scan("upsilon", n, &[(5, 6, "5")])?;
    golden_scan("bigomega", n, &[(14, 15, "2")])?;
    golden_scan("omega", n, &[(3, 5, "1")])?;
    golden_scan("ld", n, &[(4, 27, "1")])?;
    golden_scan("pillai", n, &[(15, 23, "45")])?;
    golden_scan("pillai_normalized", n, &[(2, 15, "3/4")])?;
    golden_scan("nd_over_x", n, &[(1, 2, "1"), (8, 12, "1/2")])?;
    golden_scan("phi_over_x", n, &[(6, 12, "1/3")])?;
    golden_scan(
        "sigma_over_x",
        n,
        &[(6, 28, "2"), (30, 140, "12/5"), (120, 672, "3")],
    )?;
    golden_scan("nd_over_x2", n, &[(30_000, 36_000, "1/18000000")])?;
    Ok("all listed equalities found at N = 100000 (nd/x^2 for the 30000/36000 pair; (30, 140) for 12/5)".into())
}

fn conjecture_scans() -> Outcome {
    let t = Instant::now();
    let n = 1_000_000;
    for (name, mode) in [
        ("sigma_over_x2", ScanMode::All),
        ("phi_over_x2", ScanMode::All),
        ("sigma_over_x", ScanMode::Coprime),
    ] {
        let r =
            scan_collisions(&f(name), n, &ScanOptions::mode(mode)).map_err(|e| e.to_string())?;
        ensure(r.verified, || format!("{name}: unverified"))?;
        ensure(r.is_empty(), || {
            format!("{name} {mode}: verified collisions {:?}", r.collisions)
        })?;
    }
    ensure(t.elapsed().as_secs() < 600, || {
        format!("took {:?}", t.elapsed())
    })?;
    Ok(format!("no collisions for sigma/x^2, phi/x^2 (all pairs) or sigma/x (coprime) up to 10^6 in {:.1?}", t.elapsed()))
}

fn multiperfect() -> Outcome {
    let t = Instant::now();
    let r = scan_multiperfect(1_000_000).map_err(|e| e.to_string())?;
    let hits: Vec<u64> = r.hits.iter().map(|h| h.x).collect();
    ensure(
        hits == [6, 28, 120, 496, 672, 8128, 30240, 32760, 523776],
        || format!("{hits:?}"),
    )?;
    ensure(r.all_even && t.elapsed().as_secs() < 60, || {
        "odd hit or too slow".into()
    })?;
    Ok(format!(
        "9 hits up to 10^6, all even, in {:.1?}",
        t.elapsed()
    ))
}

fn enumerate_partitions(k: u64, largest: u64) -> u64 {
    if k == 0 {
        return 1;
    }
    (1..=largest.min(k))
        .map(|first| enumerate_partitions(k - first, first))
        .sum()
}

fn bounds() -> Outcome {
    let b = partition_bounds(12).map_err(|e| e.to_string())?;
    ensure(b.p_nd == 7u32.into() && b.p_omega == 2u32.into(), || {
        format!("{b:?}")
    })?;
    let mut notes = Vec::new();
    for n in [6u64, 12, 30] {
        let r = partition_census(n, &catalog(&[n])).map_err(|e| e.to_string())?;
        ensure(r.within_bound, || {
            format!("n = {n}: {} shapes > {}", r.distinct_shapes, r.bound_nd)
        })?;
        notes.push(format!(
            "n={n}: {} profiles <= {} ({} set partitions)",
            r.distinct_shapes, r.bound_nd, r.distinct
        ));
    }
    let p = partition_counts(40);
    for k in 0..=40u64 {
        ensure(p[k as usize] == enumerate_partitions(k, k).into(), || {
            format!("p({k})")
        })?;
    }
    Ok(format!(
        "bounds(12) = (7, 2); {}; p(k) matches enumeration for k <= 40",
        notes.join(", ")
    ))
}

fn determinism() -> Outcome {
    let cases = [
        ("sigma_over_x", ScanMode::All, 100_000u64),
        ("bigomega", ScanMode::Coprime, 20_000),
        ("ld", ScanMode::Squarefree, 100_000),
        ("phi_over_x", ScanMode::All, 100_000),
    ];
    for (name, mode, max) in cases {
        let bytes = |jobs| {
            let opts = ScanOptions {
                jobs,
                chunk_size: 4096,
                ..ScanOptions::mode(mode)
            };
            scan_collisions(&f(name), max, &opts).unwrap().to_json()
        };
        let one = bytes(1);
        ensure(one == bytes(2) && one == bytes(8), || {
            format!("{name} {mode} differs across threads")
        })?;
    }
    Ok("collision reports byte-identical with 1, 2 and 8 threads".into())
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("axiom matrix", axiom_matrix),
        ("metric claims", metric_claims),
        ("coprime-reduced counterexample", delta_counterexample),
        ("triple equivalence", triple_equivalence),
        ("refinement and isomorphism", refinement_and_isomorphism),
        ("permutation invariance", permutation_invariance_check),
        ("golden equal values", golden_examples),
        ("conjecture scans", conjecture_scans),
        ("multiperfect", multiperfect),
        ("bounds", bounds),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(msg) => println!(
                "criterion {:>2} PASS  {name}: {msg} [{:.1?}]",
                i + 1,
                t.elapsed()
            ),
            Err(msg) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL  {name}: {msg} [{:.1?}]",
                    i + 1,
                    t.elapsed()
                );
            }
        }
    }
    println!("note: {}", delta_matrix_note());
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
