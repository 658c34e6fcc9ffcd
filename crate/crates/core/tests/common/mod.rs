#![allow(dead_code)]

use linsplit::{make_field, FieldElement, FieldMatrix, FieldSpec, LinearizedPoly};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gf(p: u64, s: u32, n: u32) -> FieldSpec {
    make_field(p, s, n).unwrap()
}

pub fn random_element(spec: &FieldSpec, rng: &mut impl Rng) -> FieldElement {
    spec.decode(rng.gen_range(0..spec.order())).unwrap()
}

pub fn random_nonzero(spec: &FieldSpec, rng: &mut impl Rng) -> FieldElement {
    spec.decode(rng.gen_range(1..spec.order())).unwrap()
}

/// Random `L` of q-degree exactly `d`, with a fair share of sparse coefficient lists.
pub fn random_poly(spec: &FieldSpec, d: usize, rng: &mut impl Rng) -> LinearizedPoly {
    let sparse = rng.gen_bool(0.3);
    let mut coeffs: Vec<FieldElement> = (0..d)
        .map(|_| {
            if sparse && rng.gen_bool(0.6) {
                spec.zero()
            } else {
                random_element(spec, rng)
            }
        })
        .collect();
    coeffs.push(random_nonzero(spec, rng));
    LinearizedPoly::new(spec, coeffs).unwrap()
}

/// Prime powers p^(s·n) up to `2^max_bits`, picked at random.
pub fn random_field(rng: &mut impl Rng, max_bits: u32) -> FieldSpec {
    const PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 31, 101, 257, 65537];
    loop {
        let p = PRIMES[rng.gen_range(0..PRIMES.len())];
        let s = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=12);
        let bits = (p as f64).log2() * f64::from(s * n);
        if bits <= f64::from(max_bits) {
            return gf(p, s, n);
        }
    }
}

/// Number of roots of `L` in the field, by evaluating at every element.
pub fn root_count(poly: &LinearizedPoly) -> u64 {
    let spec = poly.spec();
    spec.elements()
        .filter(|x| poly.evaluate(x).unwrap().is_zero())
        .count() as u64
}

/// `C · C^(q) · … · C^(q^(k-1))` by plain matrix products.
pub fn twisted_product(poly: &LinearizedPoly, k: u64) -> FieldMatrix {
    let c = poly.companion_matrix();
    let mut acc = c.clone();
    for i in 1..k {
        acc = acc.mul(&c.frobenius(i)).unwrap();
    }
    acc
}

/// Every `(a, b)` pair of the field.
pub fn all_pairs(spec: &FieldSpec) -> impl Iterator<Item = (FieldElement, FieldElement)> + '_ {
    spec.elements()
        .flat_map(move |a| spec.elements().map(move |b| (a.clone(), b)))
}
