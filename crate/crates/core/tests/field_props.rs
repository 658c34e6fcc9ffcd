mod common;

use common::{gf, random_element, rng};
use linsplit::{FieldElement, FieldSpec};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

fn test_fields() -> Vec<FieldSpec> {
    vec![
        gf(2, 1, 8),
        gf(2, 2, 5),
        gf(3, 1, 5),
        gf(3, 2, 3),
        gf(5, 3, 2),
        gf(7, 1, 1),
        gf(65537, 1, 2),
        gf(2, 1, 61),
        gf(4294967291, 1, 1),
        gf(3037000493, 1, 2),
    ]
}

/// Product in GF(p)[t]/(f) by schoolbook multiplication and long division.
fn slow_mul(spec: &FieldSpec, x: &FieldElement, y: &FieldElement) -> Vec<u64> {
    let p = spec.p() as u128;
    let f = spec.modulus();
    let m = f.len() - 1;
    let mut prod = vec![0u128; 2 * m];
    for (i, &a) in x.coeffs().iter().enumerate() {
        for (j, &b) in y.coeffs().iter().enumerate() {
            prod[i + j] = (prod[i + j] + a as u128 * b as u128) % p;
        }
    }
    for top in (m..2 * m).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (k, &fk) in f.iter().enumerate() {
            let idx = top - m + k;
            prod[idx] = (prod[idx] + (p - c) * fk as u128) % p;
        }
    }
    prod[..m].iter().map(|&c| c as u64).collect()
}

#[test]
fn axioms_on_random_triples() {
    let mut r = rng(1);
    for f in test_fields() {
        for _ in 0..10_000 {
            let (x, y, z) = (random_element(&f, &mut r), random_element(&f, &mut r), random_element(&f, &mut r));
            let xy = f.mul(&x, &y).unwrap();
            assert_eq!(xy, f.mul(&y, &x).unwrap());
            assert_eq!(f.add(&x, &y).unwrap(), f.add(&y, &x).unwrap());
            assert_eq!(f.mul(&xy, &z).unwrap(), f.mul(&x, &f.mul(&y, &z).unwrap()).unwrap());
            assert_eq!(
                f.add(&f.add(&x, &y).unwrap(), &z).unwrap(),
                f.add(&x, &f.add(&y, &z).unwrap()).unwrap()
            );
            let lhs = f.mul(&x, &f.add(&y, &z).unwrap()).unwrap();
            let rhs = f.add(&xy, &f.mul(&x, &z).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(xy.coeffs(), slow_mul(&f, &x, &y).as_slice());
        }
    }
}

#[test]
fn inverses_and_negation() {
    let mut r = rng(2);
    for f in test_fields() {
        for _ in 0..2_000 {
            let x = random_element(&f, &mut r);
            assert!(f.add(&x, &f.neg(&x).unwrap()).unwrap().is_zero());
            assert_eq!(f.sub(&x, &x).unwrap(), f.zero());
            if !x.is_zero() {
                assert_eq!(f.mul(&x, &f.inv(&x).unwrap()).unwrap(), f.one());
            }
        }
    }
}

#[test]
fn frobenius_fixed_points_are_ground_field() {
    for (p, s, n) in [(2, 1, 6), (2, 2, 3), (3, 1, 4), (3, 2, 2), (5, 1, 3), (2, 3, 4), (7, 1, 2)] {
        let f = gf(p, s, n);
        assert!(f.order() <= 1 << 12);
        let fixed = f
            .elements()
            .filter(|x| f.frobenius_q(x, 1).unwrap() == *x)
            .count() as u64;
        assert_eq!(fixed, f.q(), "{f}");
    }
}

#[test]
fn frobenius_is_a_field_automorphism() {
    let mut r = rng(3);
    for f in test_fields() {
        for _ in 0..1_000 {
            let (x, y) = (random_element(&f, &mut r), random_element(&f, &mut r));
            let fr = |e: &FieldElement| f.frobenius_q(e, 1).unwrap();
            assert_eq!(fr(&f.add(&x, &y).unwrap()), f.add(&fr(&x), &fr(&y)).unwrap());
            assert_eq!(fr(&f.mul(&x, &y).unwrap()), f.mul(&fr(&x), &fr(&y)).unwrap());
            assert_eq!(fr(&x), f.pow_u64(&x, f.q()).unwrap());
            assert_eq!(f.frobenius_q(&x, u64::from(f.n())).unwrap(), x);
        }
    }
}

#[test]
fn huge_exponents_reduce() {
    let mut r = rng(4);
    for f in test_fields() {
        let group = BigInt::from(f.order() - 1);
        for _ in 0..200 {
            let x = random_element(&f, &mut r);
            if x.is_zero() {
                continue;
            }
            let e: BigInt = BigInt::from(r.gen::<u64>()) * BigInt::from(r.gen::<u64>()) * BigInt::from(r.gen::<u64>());
            let reduced = &e % &group;
            assert_eq!(f.pow(&x, &e).unwrap(), f.pow(&x, &reduced).unwrap());
            assert_eq!(f.mul(&f.pow(&x, &-&e).unwrap(), &f.pow(&x, &e).unwrap()).unwrap(), f.one());
        }
    }
}

#[test]
fn norm_lands_in_ground_field_and_is_multiplicative() {
    let mut r = rng(5);
    for f in test_fields() {
        for _ in 0..500 {
            let (x, y) = (random_element(&f, &mut r), random_element(&f, &mut r));
            let nx = f.norm_rel(&x).unwrap();
            assert_eq!(f.frobenius_q(&nx, 1).unwrap(), nx);
            assert_eq!(
                f.norm_rel(&f.mul(&x, &y).unwrap()).unwrap(),
                f.mul(&nx, &f.norm_rel(&y).unwrap()).unwrap()
            );
        }
    }
}

#[test]
fn encode_decode_bijection_exhaustive() {
    for f in [gf(2, 1, 10), gf(3, 2, 3), gf(5, 1, 4)] {
        for code in 0..f.order() {
            assert_eq!(f.encode(&f.decode(code).unwrap()), code);
        }
        assert!(f.decode(f.order()).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn encode_decode_roundtrip(idx in 0usize..10, raw in any::<u64>()) {
        let f = &test_fields()[idx];
        let code = raw % f.order();
        prop_assert_eq!(f.encode(&f.decode(code).unwrap()), code);
    }

    #[test]
    fn pow_adds_exponents(idx in 0usize..10, raw in any::<u64>(), e1 in 0u64..1 << 40, e2 in 0u64..1 << 40) {
        let f = &test_fields()[idx];
        let x = f.decode(raw % f.order()).unwrap();
        let lhs = f.pow_u64(&x, e1 + e2).unwrap();
        let rhs = f.mul(&f.pow_u64(&x, e1).unwrap(), &f.pow_u64(&x, e2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_roundtrip(p_idx in 0usize..4, s in 1u32..3, n in 1u32..5) {
        let p = [2u64, 3, 5, 7][p_idx];
        let f = gf(p, s, n);
        let text = serde_json::to_string(&f).unwrap();
        let back: FieldSpec = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn json_rejects_reducible_modulus() {
    assert!(serde_json::from_str::<FieldSpec>(r#"{"p":2,"s":1,"n":3,"modulus":[1,0,0,1]}"#).is_err());
    assert!(serde_json::from_str::<FieldSpec>(r#"{"p":2,"s":1,"n":3,"modulus":[1,1,0,1]}"#).is_ok());
}
