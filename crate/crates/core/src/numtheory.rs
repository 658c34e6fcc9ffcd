//! Integer lemmas behind the split characterization, each with a brute-force
//! counterpart.
//!
//! All exponent arithmetic is arbitrary width: `q^(d^2)` leaves 64 bits behind
//! already for modest `d`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::prime_field::{inv_mod, is_prime, mul_mod};

/// Sign of the constant term in `x^k ± 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `x^k + 1` or `x^k - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedPowerPoly {
    pub k: u32,
    pub sign: Sign,
}

impl SignedPowerPoly {
    pub fn new(k: u32, sign: Sign) -> Result<Self> {
        if k == 0 {
            return Err(Error::ArgOutOfRange("exponent k must be at least 1".into()));
        }
        Ok(Self { k, sign })
    }

    pub fn plus(k: u32) -> Self {
        Self { k, sign: Sign::Plus }
    }

    pub fn minus(k: u32) -> Self {
        Self { k, sign: Sign::Minus }
    }

    fn to_int_poly(self) -> Vec<i64> {
        let mut v = vec![0; self.k as usize + 1];
        v[0] = self.sign.as_i64();
        v[self.k as usize] = 1;
        v
    }
}

/// A gcd of the form `x^g + const_sign`, or the constant 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GcdResult {
    pub is_trivial: bool,
    pub g: u32,
    pub const_sign: Sign,
}

impl GcdResult {
    pub fn trivial() -> Self {
        Self {
            is_trivial: true,
            g: 0,
            const_sign: Sign::Plus,
        }
    }

    pub fn binomial(g: u32, const_sign: Sign) -> Self {
        Self {
            is_trivial: false,
            g,
            const_sign,
        }
    }
}

/// Closed-form gcd of `x^k ± 1` and `x^l ± 1` over the integers (or any field
/// of characteristic other than 2). With `g = gcd(k, l)`:
///
/// - `x^k - 1, x^l - 1`: always `x^g - 1`.
/// - `x^k + 1, x^l + 1`: `x^g + 1` when `k/g` and `l/g` are both odd, else 1.
/// - `x^k - 1, x^l + 1`: `x^g + 1` when `k/g` is even and `l/g` is odd, else 1.
///
/// In characteristic 2 the two signs coincide and only the first rule applies;
/// this function always answers for characteristic 0.
pub fn gcd_power_polys(a: SignedPowerPoly, b: SignedPowerPoly) -> GcdResult {
    let g = a.k.gcd(&b.k);
    let (qa, qb) = (a.k / g, b.k / g);
    let odd = |x: u32| x % 2 == 1;
    match (a.sign, b.sign) {
        (Sign::Minus, Sign::Minus) => GcdResult::binomial(g, Sign::Minus),
        (Sign::Plus, Sign::Plus) if odd(qa) && odd(qb) => GcdResult::binomial(g, Sign::Plus),
        (Sign::Minus, Sign::Plus) if !odd(qa) && odd(qb) => GcdResult::binomial(g, Sign::Plus),
        (Sign::Plus, Sign::Minus) if odd(qa) && !odd(qb) => GcdResult::binomial(g, Sign::Plus),
        _ => GcdResult::trivial(),
    }
}

/// Largest exponent accepted by [`gcd_power_polys_oracle`].
pub const ORACLE_MAX_EXPONENT: u32 = 512;

/// Euclid's algorithm on the integer polynomials themselves, result made
/// primitive with positive leading coefficient and read back as a
/// [`GcdResult`].
pub fn gcd_power_polys_oracle(a: SignedPowerPoly, b: SignedPowerPoly) -> Result<GcdResult> {
    for k in [a.k, b.k] {
        if k == 0 || k > ORACLE_MAX_EXPONENT {
            return Err(Error::ArgOutOfRange(format!(
                "oracle exponent {k} outside 1..={ORACLE_MAX_EXPONENT}"
            )));
        }
    }
    let g = int_poly_gcd(a.to_int_poly(), b.to_int_poly())?;
    if g.len() == 1 {
        return Ok(GcdResult::trivial());
    }
    let deg = g.len() - 1;
    let interior_zero = g[1..deg].iter().all(|&c| c == 0);
    match (g[deg], g[0], interior_zero) {
        (1, 1, true) => Ok(GcdResult::binomial(deg as u32, Sign::Plus)),
        (1, -1, true) => Ok(GcdResult::binomial(deg as u32, Sign::Minus)),
        _ => Err(Error::TheoremViolation(format!("gcd {g:?} is not of the form x^g ± 1"))),
    }
}

fn strip(p: &mut Vec<i64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn is_zero_poly(p: &[i64]) -> bool {
    p.iter().all(|&c| c == 0)
}

fn primitive_part(mut p: Vec<i64>) -> Vec<i64> {
    strip(&mut p);
    let content = p.iter().fold(0i64, |acc, &c| acc.gcd(&c));
    if content > 1 {
        for c in p.iter_mut() {
            *c /= content;
        }
    }
    p
}

fn overflow() -> Error {
    Error::ArgOutOfRange("integer coefficient overflow".into())
}

/// Pseudo-remainder of `a` by `b` (b nonzero).
fn pseudo_rem(mut a: Vec<i64>, b: &[i64]) -> Result<Vec<i64>> {
    let db = b.len() - 1;
    let lead = b[db];
    let support: Vec<usize> = (0..=db).filter(|&i| b[i] != 0).collect();
    strip(&mut a);
    while a.len() > db && !is_zero_poly(&a) {
        let top = a.len() - 1;
        let c = a[top];
        let shift = top - db;
        if lead == 1 || lead == -1 {
            let factor = c * lead;
            for &i in &support {
                a[shift + i] = a[shift + i].checked_sub(factor.checked_mul(b[i]).ok_or_else(overflow)?).ok_or_else(overflow)?;
            }
        } else {
            for v in a.iter_mut() {
                *v = v.checked_mul(lead).ok_or_else(overflow)?;
            }
            for &i in &support {
                a[shift + i] = a[shift + i].checked_sub(c.checked_mul(b[i]).ok_or_else(overflow)?).ok_or_else(overflow)?;
            }
        }
        debug_assert_eq!(a[top], 0);
        strip(&mut a);
    }
    Ok(a)
}

/// Primitive gcd over Z[x], normalized to a positive leading coefficient.
fn int_poly_gcd(a: Vec<i64>, b: Vec<i64>) -> Result<Vec<i64>> {
    let mut a = primitive_part(a);
    let mut b = primitive_part(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !is_zero_poly(&b) {
        let r = pseudo_rem(a, &b)?;
        a = b;
        b = primitive_part(r);
    }
    if a.last().is_some_and(|&c| c < 0) {
        for c in a.iter_mut() {
            *c = -*c;
        }
    }
    if a.len() == 1 {
        // a nonzero constant: the gcd over Q is 1
        a[0] = 1;
    }
    Ok(a)
}

/// `C(n, i) mod p` by Lucas' theorem.
pub fn binom_mod(n: u64, i: u64, p: u64) -> Result<u64> {
    if i > n {
        return Err(Error::ArgOutOfRange(format!("i = {i} exceeds n = {n}")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let (mut n_rest, mut i_rest) = (n, i);
    let mut acc = 1 % p;
    while i_rest > 0 || n_rest > 0 {
        let (nd, id) = (n_rest % p, i_rest % p);
        if id > nd {
            return Ok(0);
        }
        acc = mul_mod(acc, small_binom_mod(nd, id, p), p);
        n_rest /= p;
        i_rest /= p;
    }
    if n <= 64 {
        debug_assert_eq!(
            BigUint::from(acc),
            binom_exact(n, i) % BigUint::from(p),
            "Lucas disagrees with the exact binomial"
        );
    }
    Ok(acc)
}

/// `C(n, i) mod p` for `i <= n < p`.
fn small_binom_mod(n: u64, i: u64, p: u64) -> u64 {
    let i = i.min(n - i);
    let (mut num, mut den) = (1 % p, 1 % p);
    for j in 0..i {
        num = mul_mod(num, n - j, p);
        den = mul_mod(den, j + 1, p);
    }
    mul_mod(num, inv_mod(den, p), p)
}

/// Exact binomial coefficient.
pub fn binom_exact(n: u64, i: u64) -> BigUint {
    if i > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(i))
}

/// Whether `p` divides `C(n, i)` for every `0 < i < n`.
pub fn all_inner_binoms_zero(n: u64, p: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::ArgOutOfRange("n must be at least 1".into()));
    }
    for i in 1..n {
        if binom_mod(n, i, p)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `n = p^e` for some `e >= 0`; `n = 1` counts as `p^0`.
pub fn is_power_of(n: u64, p: u64) -> bool {
    if n == 0 || p < 2 {
        return n == 1;
    }
    let mut rest = n;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    rest == 1
}

/// Exponent pair for the boundary case `n = d(d-1) + 1`:
/// `e1 = (q^(d^2) - 1)/(q^d - 1)` and `e2 = (q^((d-1)d) - q^(d-1))/(q^(d-1) - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentPair {
    pub e1: BigUint,
    pub e2: BigUint,
}

impl ExponentPair {
    /// Computes both exponents from their closed forms and from the geometric
    /// sums `Σ_{i<d} q^(id)` and `Σ_{0<i<d} q^(i(d-1))`, insisting they agree.
    pub fn new(q: u64, d: u32) -> Result<Self> {
        if q < 2 || d < 2 {
            return Err(Error::InvalidParameter(format!("need q >= 2 and d >= 2 (got q = {q}, d = {d})")));
        }
        let qb = BigUint::from(q);
        let one = BigUint::one();
        let e1_closed = (qb.pow(d * d) - &one) / (qb.pow(d) - &one);
        let e2_closed = (qb.pow((d - 1) * d) - qb.pow(d - 1)) / (qb.pow(d - 1) - &one);
        let e1_sum: BigUint = (0..d).map(|i| qb.pow(i * d)).sum();
        let e2_sum: BigUint = (1..d).map(|i| qb.pow(i * (d - 1))).sum();
        assert_eq!(e1_closed, e1_sum, "closed and summed e1 differ");
        assert_eq!(e2_closed, e2_sum, "closed and summed e2 differ");
        Ok(Self {
            e1: e1_closed,
            e2: e2_closed,
        })
    }
}

/// Divisibility part of the exponent lemma: with `n = d(d-1) + 1`, whether
/// `(q^n - 1)/(q - 1)` divides `1 + q·e1·e2`.
pub fn expos_divisibility(q: u64, d: u32) -> Result<bool> {
    let ExponentPair { e1, e2 } = ExponentPair::new(q, d)?;
    let n = d * (d - 1) + 1;
    let qb = BigUint::from(q);
    let norm_exp = (qb.pow(n) - 1u32) / (&qb - 1u32);
    let lhs = BigUint::one() + &qb * e1 * e2;
    Ok((lhs % norm_exp).is_zero())
}

/// Whether the exponents `i·d + j·(d-1) + 1 mod n` for `0 <= i < d`,
/// `1 <= j < d` are exactly `1, …, n-1` (each once), `n = d(d-1) + 1`.
pub fn exponent_coverage(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let n = (d * (d - 1) + 1) as u64;
    let d = d as u64;
    let values: Vec<u64> = (0..d)
        .flat_map(|i| (1..d).map(move |j| (i * d + j * (d - 1) + 1) % n))
        .collect();
    let set: BTreeSet<u64> = values.iter().copied().collect();
    values.len() == set.len() && set == (1..n).collect()
}

/// The exponent lemma: divisibility plus the exponent-coverage claim behind it.
pub fn expos_lemma_check(q: u64, d: u32) -> Result<bool> {
    Ok(expos_divisibility(q, d)? && exponent_coverage(d))
}

/// Bezout coefficients: `(s, t, g)` with `s·k + t·l = g = gcd(k, l)`.
pub fn bezout(k: i64, l: i64) -> Result<(i64, i64, i64)> {
    if k < 1 || l < 1 {
        return Err(Error::ArgOutOfRange("bezout expects positive inputs".into()));
    }
    let e = k.extended_gcd(&l);
    Ok((e.x, e.y, e.gcd))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(
            gcd_power_polys(SignedPowerPoly::plus(6), SignedPowerPoly::plus(2)),
            GcdResult::binomial(2, Sign::Plus)
        );
        assert_eq!(
            gcd_power_polys(SignedPowerPoly::plus(6), SignedPowerPoly::plus(4)),
            GcdResult::trivial()
        );
        for k in 1..10 {
            assert_eq!(
                gcd_power_polys(SignedPowerPoly::minus(k), SignedPowerPoly::minus(k)),
                GcdResult::binomial(k, Sign::Minus)
            );
        }
        assert_eq!(
            gcd_power_polys(SignedPowerPoly::minus(4), SignedPowerPoly::plus(6)),
            GcdResult::binomial(2, Sign::Plus)
        );
        assert_eq!(
            gcd_power_polys(SignedPowerPoly::plus(6), SignedPowerPoly::minus(4)),
            GcdResult::binomial(2, Sign::Plus)
        );
    }

    #[test]
    fn oracle_examples() {
        let o = |a, b| gcd_power_polys_oracle(a, b).unwrap();
        assert_eq!(o(SignedPowerPoly::plus(2), SignedPowerPoly::plus(2)), GcdResult::binomial(2, Sign::Plus));
        assert_eq!(o(SignedPowerPoly::plus(3), SignedPowerPoly::plus(5)), GcdResult::binomial(1, Sign::Plus));
        assert_eq!(o(SignedPowerPoly::minus(4), SignedPowerPoly::plus(6)), GcdResult::binomial(2, Sign::Plus));
        assert_eq!(o(SignedPowerPoly::plus(6), SignedPowerPoly::plus(4)), GcdResult::trivial());
        assert_eq!(o(SignedPowerPoly::minus(3), SignedPowerPoly::plus(2)), GcdResult::trivial());
        assert!(gcd_power_polys_oracle(SignedPowerPoly::plus(513), SignedPowerPoly::plus(2)).is_err());
        assert!(SignedPowerPoly::new(0, Sign::Plus).is_err());
    }

    #[test]
    fn oracle_handles_extreme_exponents() {
        let a = SignedPowerPoly::plus(512);
        let b = SignedPowerPoly::minus(511);
        assert_eq!(gcd_power_polys_oracle(a, b).unwrap(), gcd_power_polys(a, b));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binom_mod(4, 2, 2).unwrap(), 0);
        assert_eq!(binom_mod(6, 2, 2).unwrap(), 1);
        for p in [2, 3, 5, 7] {
            for n in 0..20 {
                assert_eq!(binom_mod(n, 0, p).unwrap(), 1);
            }
        }
        assert!(binom_mod(3, 4, 2).is_err());
        assert_eq!(binom_mod(3, 1, 4).unwrap_err(), Error::NotPrime(4));
        // large prime, digits below p
        assert_eq!(binom_mod(10, 3, 1_000_000_007).unwrap(), 120);
    }

    #[test]
    fn power_criterion_examples() {
        assert!(all_inner_binoms_zero(8, 2).unwrap());
        assert!(is_power_of(8, 2));
        assert!(!all_inner_binoms_zero(6, 2).unwrap());
        assert!(!is_power_of(6, 2));
        for p in [2, 3, 5] {
            assert!(all_inner_binoms_zero(1, p).unwrap());
            assert!(is_power_of(1, p));
        }
        assert!(all_inner_binoms_zero(0, 2).is_err());
    }

    #[test]
    fn exponent_pairs() {
        let check = |q, d, e1: u64, e2: u64| {
            let pair = ExponentPair::new(q, d).unwrap();
            assert_eq!(pair.e1, BigUint::from(e1));
            assert_eq!(pair.e2, BigUint::from(e2));
        };
        check(2, 3, 73, 20);
        check(2, 2, 5, 2);
        check(3, 2, 10, 3);
        assert!(ExponentPair::new(2, 1).is_err());
    }

    #[test]
    fn expos_examples() {
        // 1 + 2·73·20 = 2921 = 23·127
        assert!(expos_lemma_check(2, 3).unwrap());
        // 1 + 2·5·2 = 21 = 3·7
        assert!(expos_lemma_check(2, 2).unwrap());
        // 1 + 3·10·3 = 91 = 7·13
        assert!(expos_lemma_check(3, 2).unwrap());
        assert!(exponent_coverage(5));
        assert!(!exponent_coverage(1));
    }

    #[test]
    fn bezout_examples() {
        let (s, t, g) = bezout(6, 4).unwrap();
        assert_eq!(g, 2);
        assert_eq!(6 * s + 4 * t, 2);
        let (s, t, g) = bezout(9, 9).unwrap();
        assert_eq!((g, 9 * s + 9 * t), (9, 9));
        let (s, t, g) = bezout(1, 17).unwrap();
        assert_eq!((g, s + 17 * t), (1, 1));
        assert!(bezout(0, 3).is_err());
    }
}
