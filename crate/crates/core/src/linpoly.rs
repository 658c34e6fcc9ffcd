//! Linearized polynomials `L(x) = Σ a_i x^(q^i)` over GF(q^n).
//!
//! The fast nullity path builds the companion matrix `C_L` of the monic form
//! `x^(q^d) - Σ_{i<d} c_i x^(q^i)` (ones on the subdiagonal, `c_0..c_{d-1}` in
//! the last column) and the twisted product
//! `A_{L,k} = C_L · C_L^(q) · … · C_L^(q^(k-1))`. Then
//! `nullity(L) = d - rank(A_{L,n} - I_d)`. The brute-force path writes `L` as a
//! GF(p)-linear map on GF(p^(s·n)) and row-reduces it.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{FieldElement, FieldSpec};
use crate::matrix::FieldMatrix;
use crate::prime_field::{null_space, row_reduce};

/// A q-linearized polynomial with nonzero leading coefficient and q-degree d >= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearizedPoly {
    spec: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl LinearizedPoly {
    /// Builds `Σ coeffs[i] x^(q^i)`. Trailing zero coefficients are dropped.
    pub fn new(spec: &FieldSpec, mut coeffs: Vec<FieldElement>) -> Result<Self> {
        for c in &coeffs {
            spec.check(c)?;
        }
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => Err(Error::ZeroPolynomial),
            1 => Err(Error::DegreeTooSmall { min: 1, got: 0 }),
            _ => Ok(Self {
                spec: spec.clone(),
                coeffs,
            }),
        }
    }

    /// Builds the polynomial from integer element codes `a_0, …, a_d`.
    pub fn from_codes(spec: &FieldSpec, codes: &[u64]) -> Result<Self> {
        let coeffs = codes.iter().map(|&c| spec.decode(c)).collect::<Result<Vec<_>>>()?;
        Self::new(spec, coeffs)
    }

    /// `x^(q^d) - b x^q - a x`, stored as `(-a, -b, 0, …, 0, 1)`.
    pub fn trinomial(spec: &FieldSpec, d: usize, a: &FieldElement, b: &FieldElement) -> Result<Self> {
        if d < 2 {
            return Err(Error::DegreeTooSmall { min: 2, got: d });
        }
        spec.check(a)?;
        spec.check(b)?;
        let mut coeffs = vec![spec.zero(); d + 1];
        coeffs[0] = spec.neg_unchecked(a);
        coeffs[1] = spec.neg_unchecked(b);
        coeffs[d] = spec.one();
        Ok(Self {
            spec: spec.clone(),
            coeffs,
        })
    }

    /// `x^(q^d) - a x`.
    pub fn binomial(spec: &FieldSpec, d: usize, a: &FieldElement) -> Result<Self> {
        if d < 1 {
            return Err(Error::DegreeTooSmall { min: 1, got: d });
        }
        spec.check(a)?;
        let mut coeffs = vec![spec.zero(); d + 1];
        coeffs[0] = spec.neg_unchecked(a);
        coeffs[d] = spec.one();
        Ok(Self {
            spec: spec.clone(),
            coeffs,
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// The q-degree d.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn to_codes(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| self.spec.encode(c)).collect()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs[self.degree()] == self.spec.one()
    }

    /// Divides every coefficient by the leading one; roots and nullity are unchanged.
    pub fn monic(&self) -> Self {
        let f = &self.spec;
        let inv = f.inv_unchecked(&self.coeffs[self.degree()]);
        Self {
            spec: f.clone(),
            coeffs: self.coeffs.iter().map(|c| f.mul_unchecked(c, &inv)).collect(),
        }
    }

    /// The `c_i` of the monic form `x^(q^d) - Σ_{i<d} c_i x^(q^i)`.
    pub fn lower_coeffs(&self) -> Vec<FieldElement> {
        let f = &self.spec;
        let d = self.degree();
        let minus_inv = f.neg_unchecked(&f.inv_unchecked(&self.coeffs[d]));
        self.coeffs[..d].iter().map(|c| f.mul_unchecked(c, &minus_inv)).collect()
    }

    pub fn evaluate(&self, x: &FieldElement) -> Result<FieldElement> {
        if !self.spec.contains(x) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.evaluate_unchecked(x))
    }

    fn evaluate_unchecked(&self, x: &FieldElement) -> FieldElement {
        let f = &self.spec;
        let mut acc = f.zero();
        let mut power = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = f.add_unchecked(&acc, &f.mul_unchecked(c, &power));
            }
            if i < self.degree() {
                power = f.frobenius_once(&power);
            }
        }
        acc
    }

    /// The d×d companion matrix of the monic form.
    pub fn companion_matrix(&self) -> FieldMatrix {
        companion_from_lower(&self.spec, &self.lower_coeffs())
    }

    /// `A_{L,k} = C_L · C_L^(q) · … · C_L^(q^(k-1))` for `k >= 1`.
    pub fn a_matrix(&self, k: u64) -> Result<FieldMatrix> {
        if k == 0 {
            return Err(Error::ArgOutOfRange("A_{L,k} needs k >= 1".into()));
        }
        let f = &self.spec;
        let mut twisted = self.lower_coeffs();
        let mut acc = companion_from_lower(f, &twisted);
        for _ in 1..k {
            for c in twisted.iter_mut() {
                *c = f.frobenius_once(c);
            }
            acc = times_companion(&acc, &twisted);
        }
        Ok(acc)
    }

    /// Nullity from `d - rank(A_{L,n} - I_d)`.
    pub fn nullity_fast(&self) -> usize {
        let f = &self.spec;
        let d = self.degree();
        let mut m = self
            .a_matrix(f.n() as u64)
            .expect("n >= 1");
        for i in 0..d {
            let diag = f.sub_unchecked(m.get(i, i), &f.one());
            m.set_unchecked(i, i, diag);
        }
        d - m.rank()
    }

    pub fn splits_completely(&self) -> bool {
        self.nullity_fast() == self.degree()
    }

    /// Rows of the GF(p)-matrix of `L` in the basis `1, t, …, t^(sn-1)`.
    fn prime_field_matrix(&self) -> Vec<Vec<u64>> {
        let f = &self.spec;
        let m = f.degree();
        let columns: Vec<FieldElement> = (0..m)
            .map(|i| {
                let mut basis = f.zero();
                let mut coeffs = basis.coeffs().to_vec();
                coeffs[i] = 1;
                basis = f.element(coeffs).expect("unit vector");
                self.evaluate_unchecked(&basis)
            })
            .collect();
        (0..m)
            .map(|r| columns.iter().map(|col| col.coeffs()[r]).collect())
            .collect()
    }

    /// Nullity over GF(q) by direct row reduction of `L` as a GF(p)-linear map.
    pub fn nullity_bruteforce(&self) -> usize {
        let f = &self.spec;
        let mut rows = self.prime_field_matrix();
        let rank = row_reduce(&mut rows, f.p()).len();
        let over_p = f.degree() - rank;
        debug_assert_eq!(over_p % f.s() as usize, 0);
        over_p / f.s() as usize
    }

    /// A GF(q)-basis of the roots of `L` in GF(q^n).
    pub fn kernel_basis(&self) -> Vec<FieldElement> {
        let f = &self.spec;
        let p = f.p();
        let m = f.degree();
        let s = f.s() as usize;
        let kernel: Vec<FieldElement> = null_space(self.prime_field_matrix(), m, p)
            .into_iter()
            .map(|v| f.element(v).expect("kernel vector lies in the field"))
            .collect();
        if s == 1 {
            return kernel;
        }
        // GF(p)-basis of the subfield GF(q), the roots of x^q - x
        let ground = LinearizedPoly::binomial(f, 1, &f.one())
            .expect("degree 1")
            .prime_field_matrix();
        let ground: Vec<FieldElement> = null_space(ground, m, p)
            .into_iter()
            .map(|v| f.element(v).expect("kernel vector lies in the field"))
            .collect();

        let mut span: Vec<Vec<u64>> = Vec::new();
        let mut basis = Vec::new();
        for u in kernel.iter() {
            if basis.len() * s == kernel.len() {
                break;
            }
            let mut trial = span.clone();
            trial.push(u.coeffs().to_vec());
            if row_reduce(&mut trial, p).len() > span.len() {
                span.extend(ground.iter().map(|w| f.mul_unchecked(w, u).coeffs().to_vec()));
                let mut reduced = span.clone();
                let r = row_reduce(&mut reduced, p).len();
                reduced.truncate(r);
                span = reduced;
                basis.push(u.clone());
            }
        }
        basis
    }

    /// `M_{l,k}`, the `(l, d)` entry of `A_{L,k}`, by forward recursion
    /// `M_{l,k} = Σ_{i<d} M_{l,k-d+i} c_i^(q^(k-1))` from `M_{l,l-d} = 1` and
    /// `M_{l,k} = 0` for the other `k <= 0`.
    pub fn m_recursive(&self, l: usize, k: i64) -> Result<FieldElement> {
        let f = &self.spec;
        let d = self.degree();
        if l < 1 || l > d {
            return Err(Error::ArgOutOfRange(format!("row index l = {l} outside 1..={d}")));
        }
        let d_i = d as i64;
        if k < 1 - d_i {
            return Err(Error::ArgOutOfRange(format!("k = {k} below 1 - d = {}", 1 - d_i)));
        }
        if k <= 0 {
            return Ok(if k == l as i64 - d_i { f.one() } else { f.zero() });
        }
        // window holds M_{l,k-d}, …, M_{l,k-1}
        let mut window: VecDeque<FieldElement> = (0..d).map(|i| if i == l - 1 { f.one() } else { f.zero() }).collect();
        let mut twisted = self.lower_coeffs();
        let mut current = f.zero();
        for step in 1..=k {
            current = window
                .iter()
                .zip(&twisted)
                .filter(|(m, c)| !m.is_zero() && !c.is_zero())
                .fold(f.zero(), |acc, (m, c)| f.add_unchecked(&acc, &f.mul_unchecked(m, c)));
            if step < k {
                window.pop_front();
                window.push_back(current.clone());
                for c in twisted.iter_mut() {
                    *c = f.frobenius_once(c);
                }
            }
        }
        Ok(current)
    }

    /// The `(l, j)` entry of `A_{L,k}` (1-based) read off as `M_{l,k-d+j}`.
    pub fn a_matrix_entry_via_recursion(&self, l: usize, j: usize, k: u64) -> Result<FieldElement> {
        let d = self.degree();
        if j < 1 || j > d {
            return Err(Error::ArgOutOfRange(format!("column index j = {j} outside 1..={d}")));
        }
        if k < 1 {
            return Err(Error::ArgOutOfRange("A_{L,k} needs k >= 1".into()));
        }
        self.m_recursive(l, k as i64 - d as i64 + j as i64)
    }
}

fn companion_from_lower(spec: &FieldSpec, lower: &[FieldElement]) -> FieldMatrix {
    let d = lower.len();
    let mut m = FieldMatrix::zeros(spec, d, d);
    for i in 1..d {
        m.set_unchecked(i, i - 1, spec.one());
    }
    for (i, c) in lower.iter().enumerate() {
        m.set_unchecked(i, d - 1, c.clone());
    }
    m
}

/// `acc · C` for a companion matrix `C` with last column `lower`: columns shift
/// left by one and the new last column is `Σ_i acc[·][i] · lower[i]`.
fn times_companion(acc: &FieldMatrix, lower: &[FieldElement]) -> FieldMatrix {
    let f = acc.spec();
    let d = lower.len();
    let mut out = FieldMatrix::zeros(f, d, d);
    for l in 0..d {
        for j in 0..d - 1 {
            out.set_unchecked(l, j, acc.get(l, j + 1).clone());
        }
        let last = (0..d)
            .filter(|&i| !lower[i].is_zero() && !acc.get(l, i).is_zero())
            .fold(f.zero(), |s, i| f.add_unchecked(&s, &f.mul_unchecked(acc.get(l, i), &lower[i])));
        out.set_unchecked(l, d - 1, last);
    }
    out
}

/// JSON shape of a polynomial: `{"field": {…}, "coeffs": [a_0 … a_d]}` with
/// coefficients as element codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearizedPolyRepr {
    pub field: FieldSpec,
    pub coeffs: Vec<u64>,
}

impl From<&LinearizedPoly> for LinearizedPolyRepr {
    fn from(poly: &LinearizedPoly) -> Self {
        Self {
            field: poly.spec.clone(),
            coeffs: poly.to_codes(),
        }
    }
}

impl TryFrom<LinearizedPolyRepr> for LinearizedPoly {
    type Error = Error;

    fn try_from(r: LinearizedPolyRepr) -> Result<Self> {
        LinearizedPoly::from_codes(&r.field, &r.coeffs)
    }
}

impl Serialize for LinearizedPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        LinearizedPolyRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LinearizedPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = LinearizedPolyRepr::deserialize(deserializer)?;
        LinearizedPoly::try_from(repr).map_err(serde::de::Error::custom)
    }
}
