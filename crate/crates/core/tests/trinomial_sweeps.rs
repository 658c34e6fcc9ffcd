mod common;

use std::collections::BTreeSet;

use common::{all_pairs, gf, random_element, rng};
use linsplit::trinomial::{
    canonical_b, count_splitting, enumerate_splitting, enumerate_splitting_with, necessary_norm_filter,
    norm_condition_holds, predict, secondary_condition_check, verify_theorem, CaseTag, EnumerationMode,
    Prediction, SweepConfig, TrinomialParams,
};
use linsplit::{Error, FieldSpec};
use proptest::prelude::*;

/// (p, s, d, n) with n <= d(d-1) + 1, small enough to sweep all pairs.
fn in_range_instances() -> Vec<(u64, u32, u32, u32)> {
    let mut v = vec![(2, 1, 2, 1), (2, 1, 2, 2), (2, 1, 2, 3)];
    v.extend((2..=7).map(|n| (2, 1, 3, n)));
    v.extend([(3, 1, 2, 2), (3, 1, 2, 3), (2, 2, 2, 2), (2, 2, 2, 3), (5, 1, 2, 3), (3, 1, 3, 2), (3, 1, 3, 3)]);
    v
}

fn codes(spec: &FieldSpec, pairs: &[(linsplit::FieldElement, linsplit::FieldElement)]) -> Vec<(u64, u64)> {
    pairs.iter().map(|(a, b)| (spec.encode(a), spec.encode(b))).collect()
}

#[test]
fn prediction_agrees_with_nullity_everywhere() {
    for (p, s, d, n) in in_range_instances() {
        let f = gf(p, s, n);
        for (a, b) in all_pairs(&f) {
            let params = TrinomialParams::new(&f, d, a, b).unwrap();
            let verdict = predict(&params);
            assert_ne!(verdict.predicted_splits, Prediction::Unknown);
            let splits = params.nullity() == d as usize;
            assert_eq!(verdict.predicted_splits == Prediction::Yes, splits, "q = {}, d = {d}, n = {n}", f.q());
        }
    }
}

#[test]
fn unknown_exactly_outside_range() {
    let f = gf(2, 1, 8);
    let params = TrinomialParams::from_codes(&f, 3, 5, 9).unwrap();
    let v = predict(&params);
    assert_eq!(v.case_tag, CaseTag::OutsideTheoremRange);
    assert_eq!(v.predicted_splits, Prediction::Unknown);
    for (p, s, d, n) in in_range_instances() {
        let f = gf(p, s, n);
        let params = TrinomialParams::from_codes(&f, d, 1, 0).unwrap();
        assert_ne!(predict(&params).case_tag, CaseTag::OutsideTheoremRange);
    }
}

#[test]
fn modes_agree_and_counts_match() {
    for (p, s, d, n) in in_range_instances() {
        let f = gf(p, s, n);
        let both = enumerate_splitting(&f, d, EnumerationMode::Both).unwrap();
        let exhaustive = enumerate_splitting(&f, d, EnumerationMode::Exhaustive).unwrap();
        assert_eq!(both, exhaustive);
        assert_eq!(both.len() as u64, count_splitting(&f, d).unwrap(), "q = {}, d = {d}, n = {n}", f.q());
        let c = codes(&f, &both);
        let mut sorted = c.clone();
        sorted.sort_unstable();
        assert_eq!(c, sorted);
    }
}

#[test]
fn enumeration_independent_of_worker_count() {
    let f = gf(2, 1, 7);
    let base = enumerate_splitting_with(&f, 3, EnumerationMode::Exhaustive, &SweepConfig::with_workers(1)).unwrap();
    for workers in [2, 3, 8] {
        let other =
            enumerate_splitting_with(&f, 3, EnumerationMode::Exhaustive, &SweepConfig::with_workers(workers)).unwrap();
        assert_eq!(other, base);
    }
    let r1 = verify_theorem(2, 2, 3, &[3, 6], &SweepConfig::with_workers(1)).unwrap();
    let r4 = verify_theorem(2, 2, 3, &[3, 6], &SweepConfig::with_workers(4)).unwrap();
    assert_eq!(r1, r4);
}

#[test]
fn q_power_closure() {
    for (p, s, d, n) in in_range_instances() {
        let f = gf(p, s, n);
        let found: BTreeSet<(u64, u64)> = codes(&f, &enumerate_splitting(&f, d, EnumerationMode::Exhaustive).unwrap())
            .into_iter()
            .collect();
        for &(a, b) in &found {
            let twist = |c: u64| f.encode(&f.frobenius_q(&f.decode(c).unwrap(), 1).unwrap());
            assert!(found.contains(&(twist(a), twist(b))));
        }
    }
}

#[test]
fn boundary_pairs_use_canonical_b() {
    for (p, s, d, n) in in_range_instances() {
        if n != d * (d - 1) + 1 {
            continue;
        }
        let f = gf(p, s, n);
        for (a, b) in enumerate_splitting(&f, d, EnumerationMode::Exhaustive).unwrap() {
            assert_eq!(b, canonical_b(&f, d, &a).unwrap());
            assert!(norm_condition_holds(&f, d, &a));
            assert!(necessary_norm_filter(&TrinomialParams::new(&f, d, a, b).unwrap()));
        }
    }
}

#[test]
fn splitting_pairs_pass_necessary_filter() {
    for d in [2, 3] {
        for n in 1..=7 {
            let f = gf(2, 1, n);
            for (a, b) in all_pairs(&f) {
                let params = TrinomialParams::new(&f, d, a, b).unwrap();
                if params.nullity() == d as usize {
                    assert!(necessary_norm_filter(&params));
                }
            }
        }
    }
}

#[test]
fn norm_condition_implies_secondary_condition() {
    for (q_p, q_s, d) in [(2, 1, 2), (3, 1, 2), (2, 2, 2), (5, 1, 2), (7, 1, 2), (2, 1, 3), (3, 1, 3)] {
        let f = gf(q_p, q_s, d * (d - 1) + 1);
        if f.order() > 1 << 16 {
            continue;
        }
        for a in f.elements().skip(1) {
            if norm_condition_holds(&f, d, &a) {
                assert!(secondary_condition_check(&f, d, &a).unwrap(), "{f}, a = {}", f.encode(&a));
            }
        }
    }
}

#[test]
fn odd_characteristic_boundary_never_splits() {
    let f = gf(3, 1, 7);
    let mut candidates = 0;
    for a in f.elements().skip(1) {
        if norm_condition_holds(&f, 3, &a) {
            candidates += 1;
            let b = canonical_b(&f, 3, &a).unwrap();
            assert!(TrinomialParams::new(&f, 3, a, b).unwrap().nullity() < 3);
        }
    }
    assert_eq!(candidates, 1093);
    assert!(enumerate_splitting(&f, 3, EnumerationMode::Theorem).unwrap().is_empty());
    let mut r = rng(21);
    for _ in 0..2_000 {
        let params = TrinomialParams::new(&f, 3, random_element(&f, &mut r), random_element(&f, &mut r)).unwrap();
        assert!(params.nullity() < 3);
    }
}

#[test]
fn verify_reports() {
    let cfg = SweepConfig::default();
    let part1 = verify_theorem(1, 2, 3, &[2, 4, 5], &cfg).unwrap();
    for r in &part1 {
        assert_eq!(r.splitting_count, 0);
        assert!(r.counterexamples.is_empty());
        assert_eq!(r.census.values().sum::<u64>(), 4u64.pow(r.n));
    }
    let part2 = verify_theorem(2, 2, 3, &[3, 6], &cfg).unwrap();
    assert_eq!(part2.iter().map(|r| r.splitting_count).collect::<Vec<_>>(), vec![1, 9]);
    assert!(part2.iter().all(|r| r.counterexamples.is_empty()));
    let part3 = verify_theorem(3, 2, 2, &[3], &cfg).unwrap();
    assert_eq!(part3[0].splitting_count, 7);
    assert!(part3[0].counterexamples.is_empty());
    assert!(matches!(
        verify_theorem(1, 2, 3, &[14], &cfg),
        Err(Error::InvalidParameter(_)) | Err(Error::InfeasibleSweep(_))
    ));
}

#[test]
fn dividing_case_count_is_gcd() {
    // count_splitting's gcd(E, q^n - 1) against the number of b = 0 splits
    for (p, s, d, n) in [(2, 1, 3, 3), (2, 1, 3, 6), (3, 1, 3, 3), (3, 1, 3, 6), (2, 1, 4, 8), (2, 1, 4, 12), (5, 1, 2, 2)] {
        let f = gf(p, s, n);
        let direct = f
            .elements()
            .filter(|a| TrinomialParams::new(&f, d, a.clone(), f.zero()).unwrap().nullity() == d as usize)
            .count() as u64;
        assert_eq!(count_splitting(&f, d).unwrap(), direct, "q = {p}, d = {d}, n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_pairs_in_range_agree(seed in any::<u64>(), idx in 0usize..18) {
        let instances = in_range_instances();
        let (p, s, d, n) = instances[idx % instances.len()];
        let f = gf(p, s, n);
        let mut r = rng(seed);
        let params = TrinomialParams::new(&f, d, random_element(&f, &mut r), random_element(&f, &mut r)).unwrap();
        let yes = predict(&params).predicted_splits == Prediction::Yes;
        prop_assert_eq!(yes, params.nullity() == d as usize);
    }
}
