//! Arithmetic in GF(q^n) with q = p^s, realised as GF(p)[t]/(f) for a single
//! monic irreducible f of degree s·n.
//!
//! Elements are little-endian coefficient vectors over GF(p). Each element has
//! an integer code (base-p digits, little-endian) and the field is enumerated in
//! increasing code order. The modulus is the irreducible polynomial of degree
//! s·n whose non-leading coefficients have the smallest code, so the same
//! `(p, s, n)` always yields the same encodings.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prime_field::{add_mod, is_prime, mul_mod, neg_mod, poly_gcd, sub_mod};

/// Largest supported field order; one element code fits a machine word.
pub const MAX_ORDER: u64 = 1 << 63;

/// GF(p)[t]/(f) for a monic f. Irreducibility is not assumed here.
#[derive(Debug, Clone)]
struct QuotientRing {
    p: u64,
    modulus: Vec<u64>,
    // t^(m + k) mod f for k = 0..m-1
    reduction: Vec<Vec<u64>>,
    // m·p^2 fits in u64, so products can accumulate without u128
    narrow: bool,
}

impl QuotientRing {
    fn new(p: u64, modulus: Vec<u64>) -> Self {
        let m = modulus.len() - 1;
        let mut reduction = Vec::with_capacity(m.saturating_sub(1));
        if m >= 2 {
            let mut cur: Vec<u64> = modulus[..m].iter().map(|&c| neg_mod(c, p)).collect();
            reduction.push(cur.clone());
            for _ in 1..m - 1 {
                // multiply by t, folding t^m back in
                let top = cur[m - 1];
                let next: Vec<u64> = (0..m)
                    .map(|j| {
                        let shifted = if j == 0 { 0 } else { cur[j - 1] };
                        sub_mod(shifted, mul_mod(top, modulus[j], p), p)
                    })
                    .collect();
                reduction.push(next.clone());
                cur = next;
            }
        }
        let narrow = (p as u128) * (p as u128) * (m as u128 + 1) < 1u128 << 64;
        Self {
            p,
            modulus,
            reduction,
            narrow,
        }
    }

    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = 1 % self.p;
        v
    }

    /// The residue class of t.
    fn generator(&self) -> Vec<u64> {
        let m = self.degree();
        if m == 1 {
            vec![neg_mod(self.modulus[0], self.p)]
        } else {
            let mut v = vec![0; m];
            v[1] = 1;
            v
        }
    }

    fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let m = self.degree();
        let p = self.p;
        if m == 1 {
            return vec![mul_mod(x[0], y[0], p)];
        }
        if self.narrow {
            return self.mul_narrow(x, y);
        }
        // m >= 2 forces p^2 <= 2^63, so a u128 accumulator never overflows.
        let pp = p as u128;
        let mut prod = vec![0u128; 2 * m - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let xi = xi as u128;
            for (slot, &yj) in prod[i..].iter_mut().zip(y) {
                *slot += xi * yj as u128;
            }
        }
        let (low, high) = prod.split_at(m);
        let mut out: Vec<u128> = low.iter().map(|&c| c % pp).collect();
        for (k, &c) in high.iter().enumerate() {
            let c = c % pp;
            if c == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(&self.reduction[k]) {
                *o += c * r as u128;
            }
        }
        out.into_iter().map(|c| (c % pp) as u64).collect()
    }

    fn mul_narrow(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let m = self.degree();
        let p = self.p;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (slot, &yj) in prod[i..].iter_mut().zip(y) {
                *slot += xi * yj;
            }
        }
        let (low, high) = prod.split_at(m);
        let mut out: Vec<u64> = low.iter().map(|&c| c % p).collect();
        for (k, &c) in high.iter().enumerate() {
            let c = c % p;
            if c == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(&self.reduction[k]) {
                *o += c * r;
            }
        }
        for c in &mut out {
            *c %= p;
        }
        out
    }

    fn pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Ben-Or: f is irreducible iff gcd(t^(p^i) - t, f) = 1 for i = 1..=m/2.
    fn modulus_is_irreducible(&self) -> bool {
        let m = self.degree();
        if m == 1 {
            return true;
        }
        let t = self.generator();
        let mut h = t.clone();
        for _ in 0..m / 2 {
            h = self.pow(&h, self.p);
            let mut diff = h.clone();
            diff[1] = sub_mod(diff[1], 1, self.p);
            if poly_gcd(&diff, &self.modulus, self.p).len() > 1 {
                return false;
            }
        }
        true
    }
}

/// `p^e` if it fits under [`MAX_ORDER`].
fn checked_order(p: u64, e: u64) -> Option<u64> {
    let e = u32::try_from(e).ok()?;
    p.checked_pow(e).filter(|&o| o <= MAX_ORDER)
}

/// Lowest-code monic irreducible polynomial of degree `m` over GF(p).
fn smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    let mut code = 0u64;
    loop {
        let mut modulus = Vec::with_capacity(m + 1);
        let mut rest = code;
        for _ in 0..m {
            modulus.push(rest % p);
            rest /= p;
        }
        modulus.push(1);
        // a zero constant term means t divides the candidate
        if (m == 1 || modulus[0] != 0) && QuotientRing::new(p, modulus.clone()).modulus_is_irreducible()
        {
            return modulus;
        }
        code += 1;
    }
}

/// An extension field GF(q^n), q = p^s, with its defining modulus.
///
/// Cheap to clone and safe to share across threads.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

struct FieldInner {
    p: u64,
    s: u32,
    n: u32,
    q: u64,
    order: u64,
    ring: QuotientRing,
    // column i holds t^(q·i); x -> x^q is GF(p)-linear
    frobenius: Vec<Vec<u64>>,
}

/// An element of a [`FieldSpec`], stored as s·n residues mod p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Builds GF(q^n) for q = p^s with the deterministic modulus.
pub fn make_field(p: u64, s: u32, n: u32) -> Result<FieldSpec> {
    FieldSpec::new(p, s, n)
}

impl FieldSpec {
    pub fn new(p: u64, s: u32, n: u32) -> Result<Self> {
        let degree = Self::validate_shape(p, s, n)?;
        let modulus = smallest_irreducible(p, degree);
        Ok(Self::assemble(p, s, n, QuotientRing::new(p, modulus)))
    }

    /// Builds the field from an explicit modulus (little-endian, monic), checking
    /// that it is irreducible of degree s·n.
    pub fn with_modulus(p: u64, s: u32, n: u32, modulus: Vec<u64>) -> Result<Self> {
        let degree = Self::validate_shape(p, s, n)?;
        if modulus.len() != degree + 1 {
            return Err(Error::InvalidModulus(format!(
                "expected degree {degree}, got {} coefficients",
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus("coefficient not reduced mod p".into()));
        }
        if modulus[degree] != 1 {
            return Err(Error::InvalidModulus("not monic".into()));
        }
        let ring = QuotientRing::new(p, modulus);
        if !ring.modulus_is_irreducible() {
            return Err(Error::InvalidModulus("not irreducible".into()));
        }
        Ok(Self::assemble(p, s, n, ring))
    }

    fn validate_shape(p: u64, s: u32, n: u32) -> Result<usize> {
        if s == 0 || n == 0 {
            return Err(Error::InvalidParameter(format!(
                "s and n must be positive (got s = {s}, n = {n})"
            )));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let degree = s as u64 * n as u64;
        if checked_order(p, degree).is_none() {
            return Err(Error::TooLarge { p, degree });
        }
        Ok(degree as usize)
    }

    fn assemble(p: u64, s: u32, n: u32, ring: QuotientRing) -> Self {
        let degree = ring.degree();
        let order = p.pow(degree as u32);
        let q = p.pow(s);
        let tq = ring.pow(&ring.generator(), q);
        let mut frobenius = Vec::with_capacity(degree);
        let mut col = ring.one();
        for _ in 0..degree {
            let next = ring.mul(&col, &tq);
            frobenius.push(std::mem::replace(&mut col, next));
        }
        Self {
            inner: Arc::new(FieldInner {
                p,
                s,
                n,
                q,
                order,
                ring,
                frobenius,
            }),
        }
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn s(&self) -> u32 {
        self.inner.s
    }

    pub fn n(&self) -> u32 {
        self.inner.n
    }

    /// Size of the ground field GF(q).
    pub fn q(&self) -> u64 {
        self.inner.q
    }

    /// Degree s·n of the field over GF(p).
    pub fn degree(&self) -> usize {
        self.inner.ring.degree()
    }

    /// Number of elements, p^(s·n).
    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.ring.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            coeffs: self.inner.ring.one(),
        }
    }

    /// The class of t, a root of the modulus.
    pub fn generator(&self) -> FieldElement {
        FieldElement {
            coeffs: self.inner.ring.generator(),
        }
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, c: i64) -> FieldElement {
        let p = self.p() as i128;
        let mut e = self.zero();
        e.coeffs[0] = (c as i128).rem_euclid(p) as u64;
        e
    }

    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        let e = FieldElement { coeffs };
        self.check(&e)?;
        Ok(e)
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        x.coeffs.len() == self.degree() && x.coeffs.iter().all(|&c| c < self.p())
    }

    pub(crate) fn check(&self, x: &FieldElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.degree(),
                p: self.p(),
            })
        }
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add_unchecked(x, y))
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.sub_unchecked(x, y))
    }

    pub fn neg(&self, x: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        Ok(self.neg_unchecked(x))
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        self.check(x)?;
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_unchecked(x))
    }

    /// `x^e` for an arbitrary-width exponent. Nonzero bases reduce `e` modulo
    /// the group order first; `0^0 = 1`.
    pub fn pow(&self, x: &FieldElement, e: &BigInt) -> Result<FieldElement> {
        self.check(x)?;
        if x.is_zero() {
            return if e.is_negative() {
                Err(Error::DivisionByZero)
            } else if e.is_zero() {
                Ok(self.one())
            } else {
                Ok(self.zero())
            };
        }
        let group = BigInt::from(self.order() - 1);
        let r = e
            .mod_floor(&group)
            .to_u64()
            .expect("residue below the group order fits u64");
        Ok(self.pow_raw(x, r))
    }

    /// `x^e` for a machine-word exponent.
    pub fn pow_u64(&self, x: &FieldElement, e: u64) -> Result<FieldElement> {
        self.check(x)?;
        Ok(self.pow_unchecked(x, e))
    }

    /// `x^(q^j)`.
    pub fn frobenius_q(&self, x: &FieldElement, j: u64) -> Result<FieldElement> {
        self.check(x)?;
        Ok(self.frobenius_unchecked(x, j))
    }

    /// The relative norm to GF(q): `a^((q^n - 1)/(q - 1))`.
    pub fn norm_rel(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        Ok(self.norm_unchecked(a))
    }

    /// Exponent `(q^n - 1)/(q - 1)` of the relative norm.
    pub fn norm_exponent(&self) -> u64 {
        (self.order() - 1) / (self.q() - 1)
    }

    /// `(-1)^k` as a field element.
    pub fn minus_one_power(&self, k: i64) -> FieldElement {
        if self.p() == 2 || k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.from_int(-1)
        }
    }

    /// Base-p little-endian digit code of an element of this field.
    pub fn encode(&self, x: &FieldElement) -> u64 {
        debug_assert!(self.contains(x));
        let p = self.p();
        x.coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c)
    }

    pub fn decode(&self, code: u64) -> Result<FieldElement> {
        if code >= self.order() {
            return Err(Error::OutOfRange {
                code,
                order: self.order(),
            });
        }
        Ok(self.decode_unchecked(code))
    }

    /// All elements in increasing code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |c| self.decode_unchecked(c))
    }

    pub(crate) fn decode_unchecked(&self, mut code: u64) -> FieldElement {
        let p = self.p();
        let coeffs = (0..self.degree())
            .map(|_| {
                let d = code % p;
                code /= p;
                d
            })
            .collect();
        FieldElement { coeffs }
    }

    pub(crate) fn add_unchecked(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let p = self.p();
        FieldElement {
            coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(&a, &b)| add_mod(a, b, p)).collect(),
        }
    }

    pub(crate) fn sub_unchecked(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let p = self.p();
        FieldElement {
            coeffs: x.coeffs.iter().zip(&y.coeffs).map(|(&a, &b)| sub_mod(a, b, p)).collect(),
        }
    }

    pub(crate) fn neg_unchecked(&self, x: &FieldElement) -> FieldElement {
        let p = self.p();
        FieldElement {
            coeffs: x.coeffs.iter().map(|&a| neg_mod(a, p)).collect(),
        }
    }

    pub(crate) fn mul_unchecked(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: self.inner.ring.mul(&x.coeffs, &y.coeffs),
        }
    }

    pub(crate) fn inv_unchecked(&self, x: &FieldElement) -> FieldElement {
        self.pow_raw(x, self.order() - 2)
    }

    pub(crate) fn pow_unchecked(&self, x: &FieldElement, e: u64) -> FieldElement {
        if x.is_zero() {
            return if e == 0 { self.one() } else { self.zero() };
        }
        self.pow_raw(x, e % (self.order() - 1))
    }

    fn pow_raw(&self, x: &FieldElement, e: u64) -> FieldElement {
        FieldElement {
            coeffs: self.inner.ring.pow(&x.coeffs, e),
        }
    }

    pub(crate) fn frobenius_unchecked(&self, x: &FieldElement, j: u64) -> FieldElement {
        let mut cur = x.clone();
        for _ in 0..j % self.n() as u64 {
            cur = self.frobenius_once(&cur);
        }
        cur
    }

    /// One application of x -> x^q.
    pub(crate) fn frobenius_once(&self, x: &FieldElement) -> FieldElement {
        if self.inner.ring.narrow {
            let p = self.p();
            let mut acc = vec![0u64; self.degree()];
            for (&xi, col) in x.coeffs.iter().zip(&self.inner.frobenius) {
                if xi == 0 {
                    continue;
                }
                for (a, &c) in acc.iter_mut().zip(col) {
                    *a += xi * c;
                }
            }
            for a in &mut acc {
                *a %= p;
            }
            return FieldElement { coeffs: acc };
        }
        let pp = self.p() as u128;
        let mut acc = vec![0u128; self.degree()];
        for (&xi, col) in x.coeffs.iter().zip(&self.inner.frobenius) {
            if xi == 0 {
                continue;
            }
            for (a, &c) in acc.iter_mut().zip(col) {
                *a += xi as u128 * c as u128;
            }
        }
        FieldElement {
            coeffs: acc.into_iter().map(|a| (a % pp) as u64).collect(),
        }
    }

    pub(crate) fn norm_unchecked(&self, a: &FieldElement) -> FieldElement {
        self.pow_unchecked(a, self.norm_exponent())
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.p() == other.p()
                && self.s() == other.s()
                && self.n() == other.n()
                && self.modulus() == other.modulus())
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p())
            .field("s", &self.s())
            .field("n", &self.n())
            .field("modulus", &self.modulus())
            .finish()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}^{}", self.p(), self.s(), self.n())
    }
}

/// JSON shape of a field: `{"p":…, "s":…, "n":…, "modulus":[…]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpecRepr {
    pub p: u64,
    pub s: u32,
    pub n: u32,
    pub modulus: Vec<u64>,
}

impl From<FieldSpec> for FieldSpecRepr {
    fn from(spec: FieldSpec) -> Self {
        Self {
            p: spec.p(),
            s: spec.s(),
            n: spec.n(),
            modulus: spec.modulus().to_vec(),
        }
    }
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = Error;

    fn try_from(r: FieldSpecRepr) -> Result<Self> {
        FieldSpec::with_modulus(r.p, r.s, r.n, r.modulus)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FieldSpecRepr::from(self.clone()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = FieldSpecRepr::deserialize(deserializer)?;
        FieldSpec::try_from(repr).map_err(serde::de::Error::custom)
    }
}
