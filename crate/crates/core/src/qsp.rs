//! Quasi-subfield polynomials and the cost of the ECDLP index-calculus attack
//! built on them.
//!
//! A monic `L = x^(q^d) - λ(x)` is a quasi-subfield polynomial for GF(q^n) when
//! it splits completely there and `log_q(deg λ) < d²/n`.
//!
//! Costs are log2 values. The attack's relation-search cost is
//! `m! q^(n - d(m-1)) m^5.188 2^(7.376 m(m-1)) deg(λ)^(4.876 m(m-1))`, the linear
//! algebra costs `m q^(2d)`. Polylog factors are omitted.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linpoly::LinearizedPoly;
use crate::prime_field::prime_power;

pub const POLYLOG_NOTE: &str = "polylog factors omitted";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QspParams {
    pub q: u64,
    pub n: u32,
    pub d: u32,
    /// Ordinary degree of λ, e.g. `q` for `λ = b x^q + a x`.
    pub deg_lambda: u64,
    pub m: u32,
}

impl QspParams {
    pub fn new(q: u64, n: u32, d: u32, deg_lambda: u64, m: u32) -> Result<Self> {
        if prime_power(q).is_none() {
            return Err(Error::InvalidParameter(format!("q = {q} is not a prime power")));
        }
        if n == 0 || d == 0 || d > n {
            return Err(Error::InvalidParameter(format!("need 1 <= d <= n (d = {d}, n = {n})")));
        }
        if deg_lambda == 0 {
            return Err(Error::InvalidParameter("deg_lambda must be at least 1".into()));
        }
        if m < 2 {
            return Err(Error::InvalidParameter(format!("m must be at least 2 (got {m})")));
        }
        Ok(Self {
            q,
            n,
            d,
            deg_lambda,
            m,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexityEstimate {
    pub log2_relation_term: f64,
    /// `log2(m q^(2d))`.
    pub log2_linear_algebra_term: f64,
    pub log2_total: f64,
    /// `7.376 m(m-1) + 4.876 m(m-1) log2(deg λ)`, the exponential part of the
    /// relation term.
    pub log2_inner_factor: f64,
    pub beats_generic: bool,
    pub beats_bruteforce: bool,
}

/// `log2(2^x + 2^y)` without overflow.
pub fn log2_add(x: f64, y: f64) -> f64 {
    let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
    hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2
}

fn log2_factorial(m: u32) -> f64 {
    (2..=m).map(|i| f64::from(i).log2()).sum()
}

pub fn complexity_log2(params: &QspParams) -> ComplexityEstimate {
    let QspParams {
        q,
        n,
        d,
        deg_lambda,
        m,
    } = *params;
    let lq = (q as f64).log2();
    let mf = f64::from(m);
    let pairs = mf * (mf - 1.0);
    let log2_inner_factor = 7.376 * pairs + 4.876 * pairs * (deg_lambda as f64).log2();
    let relation_exponent = f64::from(n) - f64::from(d) * (mf - 1.0);
    let log2_relation_term = log2_factorial(m) + relation_exponent * lq + 5.188 * mf.log2() + log2_inner_factor;
    let log2_linear_algebra_term = mf.log2() + 2.0 * f64::from(d) * lq;
    let log2_total = log2_add(log2_relation_term, log2_linear_algebra_term);
    let log2_field = f64::from(n) * lq;
    ComplexityEstimate {
        log2_relation_term,
        log2_linear_algebra_term,
        log2_total,
        log2_inner_factor,
        beats_generic: log2_total < log2_field / 2.0,
        beats_bruteforce: log2_total < log2_field,
    }
}

/// Whether monic `L = x^(q^d) - λ` is a quasi-subfield polynomial for its field.
///
/// `L` is normalized to monic first. `λ = 0` gives `false`.
pub fn is_quasi_subfield(poly: &LinearizedPoly) -> bool {
    let poly = poly.monic();
    let d = poly.degree();
    let Some(j) = poly.coeffs()[..d].iter().rposition(|c| !c.is_zero()) else {
        return false;
    };
    // log_q(deg λ) = j
    let n = poly.spec().n() as usize;
    j * n < d * d && poly.nullity_fast() == d
}

/// `n/(2(m-1)) <= d <= n/4`: the relation term is at most `q^(n/2)` and the
/// linear algebra at most `q^(n/2)`.
pub fn window_ok(n: u32, d: u32, m: u32) -> bool {
    m >= 2 && u64::from(n) <= 2 * u64::from(m - 1) * u64::from(d) && 4 * u64::from(d) <= u64::from(n)
}

/// `d² > 2n`, the size condition for four-term quasi-subfield polynomials.
pub fn four_term_feasible(n: u32, d: u32) -> bool {
    u64::from(d) * u64::from(d) > 2 * u64::from(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub q: u64,
    pub n: u32,
    pub d: u32,
    pub m: u32,
    pub deg_lambda: u64,
    pub log2_relation: f64,
    pub log2_linalg: f64,
    pub log2_total: f64,
    pub window_ok: bool,
    pub beats_generic: bool,
    pub beats_bruteforce: bool,
}

pub const SCAN_COLUMNS: [&str; 11] = [
    "q",
    "n",
    "d",
    "m",
    "deg_lambda",
    "log2_relation",
    "log2_linalg",
    "log2_total",
    "window_ok",
    "beats_generic",
    "beats_bruteforce",
];

impl ScanRow {
    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{}\t{}\t{}",
            self.q,
            self.n,
            self.d,
            self.m,
            self.deg_lambda,
            self.log2_relation,
            self.log2_linalg,
            self.log2_total,
            self.window_ok,
            self.beats_generic,
            self.beats_bruteforce
        )
    }
}

/// Header plus one line per row.
pub fn scan_to_tsv(rows: &[ScanRow]) -> String {
    let mut out = SCAN_COLUMNS.join("\t");
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_tsv());
        out.push('\n');
    }
    out
}

/// Evaluates every `(d, m)` pair, sorted by `log2_total` then `(d, m)`.
pub fn scan_parameters(
    q: u64,
    n: u32,
    d_range: std::ops::RangeInclusive<u32>,
    m_range: std::ops::RangeInclusive<u32>,
    deg_lambda: u64,
) -> Result<Vec<ScanRow>> {
    if d_range.is_empty() || m_range.is_empty() {
        return Err(Error::InvalidParameter("empty scan range".into()));
    }
    let grid: Vec<(u32, u32)> = d_range
        .flat_map(|d| m_range.clone().map(move |m| (d, m)))
        .collect();
    let mut rows = grid
        .into_par_iter()
        .map(|(d, m)| {
            let params = QspParams::new(q, n, d, deg_lambda, m)?;
            let est = complexity_log2(&params);
            Ok(ScanRow {
                q,
                n,
                d,
                m,
                deg_lambda,
                log2_relation: est.log2_relation_term,
                log2_linalg: est.log2_linear_algebra_term,
                log2_total: est.log2_total,
                window_ok: window_ok(n, d, m),
                beats_generic: est.beats_generic,
                beats_bruteforce: est.beats_bruteforce,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|x, y| x.log2_total.total_cmp(&y.log2_total).then((x.d, x.m).cmp(&(y.d, y.m))));
    Ok(rows)
}
