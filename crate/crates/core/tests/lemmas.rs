use linsplit::numtheory::{
    all_inner_binoms_zero, binom_exact, binom_mod, bezout, exponent_coverage, expos_lemma_check, gcd_power_polys,
    gcd_power_polys_oracle, is_power_of, ExponentPair, Sign, SignedPowerPoly,
};
use num_bigint::BigUint;
use proptest::prelude::*;

#[test]
fn gcd_closed_form_matches_euclid() {
    for k in 1..=128 {
        for l in 1..=128 {
            for sk in [Sign::Plus, Sign::Minus] {
                for sl in [Sign::Plus, Sign::Minus] {
                    let a = SignedPowerPoly::new(k, sk).unwrap();
                    let b = SignedPowerPoly::new(l, sl).unwrap();
                    assert_eq!(gcd_power_polys(a, b), gcd_power_polys_oracle(a, b).unwrap(), "{a:?} {b:?}");
                }
            }
        }
    }
}

#[test]
fn inner_binomials_vanish_iff_prime_power() {
    for p in [2, 3, 5, 7] {
        for n in 1..=500 {
            assert_eq!(all_inner_binoms_zero(n, p).unwrap(), is_power_of(n, p), "n = {n}, p = {p}");
        }
    }
}

#[test]
fn lucas_matches_exact() {
    for p in [2, 3, 5, 7, 11, 13, 61, 67] {
        for n in 0..=64 {
            for i in 0..=n {
                let exact = binom_exact(n, i) % BigUint::from(p);
                assert_eq!(BigUint::from(binom_mod(n, i, p).unwrap()), exact);
            }
        }
    }
}

#[test]
fn exponent_lemma_range() {
    for q in [2, 3, 4, 5] {
        for d in 2..=8 {
            assert!(expos_lemma_check(q, d).unwrap(), "q = {q}, d = {d}");
        }
    }
    for d in 2..=12 {
        assert!(exponent_coverage(d));
    }
}

#[test]
fn exponent_pairs_against_direct_sums() {
    for q in 2u64..=9 {
        for d in 2u32..=6 {
            let pair = ExponentPair::new(q, d).unwrap();
            let qb = BigUint::from(q);
            let mut e1 = BigUint::from(0u32);
            let mut term = BigUint::from(1u32);
            for _ in 0..d {
                e1 += &term;
                term *= qb.pow(d);
            }
            let mut e2 = BigUint::from(0u32);
            let mut term = qb.pow(d - 1);
            for _ in 1..d {
                e2 += &term;
                term *= qb.pow(d - 1);
            }
            assert_eq!(pair.e1, e1);
            assert_eq!(pair.e2, e2);
        }
    }
}

proptest! {
    #[test]
    fn bezout_identity(k in 1i64..1_000_000, l in 1i64..1_000_000) {
        let (s, t, g) = bezout(k, l).unwrap();
        prop_assert_eq!(s * k + t * l, g);
        prop_assert_eq!(k % g, 0);
        prop_assert_eq!(l % g, 0);
    }

    #[test]
    fn gcd_result_divides_both(k in 1u32..400, l in 1u32..400, sk in any::<bool>(), sl in any::<bool>()) {
        let sign = |b: bool| if b { Sign::Plus } else { Sign::Minus };
        let r = gcd_power_polys(SignedPowerPoly::new(k, sign(sk)).unwrap(), SignedPowerPoly::new(l, sign(sl)).unwrap());
        if !r.is_trivial {
            prop_assert_eq!(k % r.g, 0);
            prop_assert_eq!(l % r.g, 0);
        }
    }

    #[test]
    fn binomial_symmetry(n in 0u64..10_000, frac in 0.0f64..1.0, p_idx in 0usize..4) {
        let p = [2u64, 3, 5, 7][p_idx];
        let i = (n as f64 * frac) as u64;
        prop_assert_eq!(binom_mod(n, i, p).unwrap(), binom_mod(n, n - i, p).unwrap());
    }
}
