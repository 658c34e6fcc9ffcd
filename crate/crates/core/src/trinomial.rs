//! Trinomials `x^(q^d) - b x^q - a x` over GF(q^n) with all `q^d` roots in the
//! field.
//!
//! For `n <= d(d-1) + 1` the split set is known in closed form:
//!
//! - `n <= d(d-1)` with `d ∤ n`: nothing splits.
//! - `n = i·d` with `1 <= i <= d-1`: splits iff `b = 0` and
//!   `a^(1 + q^d + … + q^((i-1)d)) = 1`.
//! - `n = d(d-1) + 1`: splits iff `N(a) = (-1)^(d-1)`, `b = -a^(q·e1)` and
//!   `d - 1` is a power of the characteristic.
//!
//! Beyond that range [`predict`] answers `Unknown`. Every enumeration here can
//! be checked against an exhaustive sweep of `nullity_fast`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{make_field, FieldElement, FieldSpec};
use crate::linpoly::LinearizedPoly;
use crate::numtheory::is_power_of;
use crate::prime_field::prime_power;

pub use crate::numtheory::ExponentPair;

/// Largest field order for an exhaustive sweep over all `(a, b)` pairs.
pub const EXHAUSTIVE_SWEEP_LIMIT: u64 = 1 << 13;

/// Largest field order for a theorem-mode sweep over all `a`.
pub const THEOREM_SWEEP_LIMIT: u64 = 1 << 24;

/// Parameters of `x^(q^d) - b x^q - a x` over a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrinomialParams {
    spec: FieldSpec,
    d: u32,
    a: FieldElement,
    b: FieldElement,
}

impl TrinomialParams {
    pub fn new(spec: &FieldSpec, d: u32, a: FieldElement, b: FieldElement) -> Result<Self> {
        if d < 2 {
            return Err(Error::DegreeTooSmall {
                min: 2,
                got: d as usize,
            });
        }
        spec.check(&a)?;
        spec.check(&b)?;
        Ok(Self {
            spec: spec.clone(),
            d,
            a,
            b,
        })
    }

    pub fn from_codes(spec: &FieldSpec, d: u32, a: u64, b: u64) -> Result<Self> {
        Self::new(spec, d, spec.decode(a)?, spec.decode(b)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    pub fn poly(&self) -> LinearizedPoly {
        LinearizedPoly::trinomial(&self.spec, self.d as usize, &self.a, &self.b).expect("validated at construction")
    }

    pub fn nullity(&self) -> usize {
        self.poly().nullity_fast()
    }
}

/// Which regime `(d, n)` falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    /// `n <= d(d-1)` and `d ∤ n`.
    NoSplitPossible,
    /// `n = i·d` with `1 <= i <= d-1`; carries `i`.
    DividesCase(u32),
    /// `n = d(d-1) + 1`.
    BoundaryCase,
    /// `n > d(d-1) + 1`.
    OutsideTheoremRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Prediction {
    Yes,
    No,
    Unknown,
}

/// The quantities a verdict was decided from. Fields not used by the case are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Conditions {
    /// `N(a)`.
    pub norm: Option<FieldElement>,
    /// `a^(1 + q^d + … + q^((i-1)d))` in the dividing case.
    pub subfield_norm: Option<FieldElement>,
    /// `-a^(q·e1)` in the boundary case.
    pub expected_b: Option<FieldElement>,
    /// Whether `d - 1` is a power of the characteristic (boundary case).
    pub char_power: Option<bool>,
    /// Whether `b = 0` (dividing case).
    pub b_is_zero: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitVerdict {
    pub case_tag: CaseTag,
    pub predicted_splits: Prediction,
    pub conditions: Conditions,
}

pub fn classify(d: u32, n: u32) -> CaseTag {
    let bound = d * (d - 1);
    if n <= bound {
        if n.is_multiple_of(d) {
            CaseTag::DividesCase(n / d)
        } else {
            CaseTag::NoSplitPossible
        }
    } else if n == bound + 1 {
        CaseTag::BoundaryCase
    } else {
        CaseTag::OutsideTheoremRange
    }
}

/// Reduces a nonnegative exponent modulo the multiplicative group order.
fn reduce_exponent(spec: &FieldSpec, e: &BigUint) -> u64 {
    (e % BigUint::from(spec.order() - 1))
        .to_u64()
        .expect("below group order")
}

/// `1 + q^d + … + q^((i-1)d)`, reduced modulo `q^n - 1`.
fn dividing_case_exponent(spec: &FieldSpec, d: u32, i: u32) -> u64 {
    let qd = BigUint::from(spec.q()).pow(d);
    let e: BigUint = (0..i).map(|j| qd.pow(j)).sum();
    reduce_exponent(spec, &e)
}

pub fn exponents(q: u64, d: u32) -> Result<ExponentPair> {
    ExponentPair::new(q, d)
}

/// `-a^(q·e1)`, the only `b` that can pair with `a` at `n = d(d-1) + 1`.
pub fn canonical_b(spec: &FieldSpec, d: u32, a: &FieldElement) -> Result<FieldElement> {
    spec.check(a)?;
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if classify_checked(d, spec.n())? != CaseTag::BoundaryCase {
        return Err(Error::InvalidParameter(format!(
            "canonical b is defined for n = d(d-1) + 1; got d = {d}, n = {}",
            spec.n()
        )));
    }
    Ok(canonical_b_unchecked(spec, d, a))
}

fn canonical_b_unchecked(spec: &FieldSpec, d: u32, a: &FieldElement) -> FieldElement {
    let pair = ExponentPair::new(spec.q(), d).expect("d >= 2");
    let e = reduce_exponent(spec, &(BigUint::from(spec.q()) * pair.e1));
    spec.neg_unchecked(&spec.pow_unchecked(a, e))
}

fn classify_checked(d: u32, n: u32) -> Result<CaseTag> {
    if d < 2 {
        return Err(Error::DegreeTooSmall {
            min: 2,
            got: d as usize,
        });
    }
    Ok(classify(d, n))
}

/// `N(a) = (-1)^(d-1)`.
pub fn norm_condition_holds(spec: &FieldSpec, d: u32, a: &FieldElement) -> bool {
    spec.contains(a) && spec.norm_unchecked(a) == spec.minus_one_power(d as i64 - 1)
}

/// `a^(1 + q·e1·e2) = (-1)^(d-1)`. Implied by [`norm_condition_holds`] at
/// `n = d(d-1) + 1`; kept to test that implication.
pub fn secondary_condition_check(spec: &FieldSpec, d: u32, a: &FieldElement) -> Result<bool> {
    spec.check(a)?;
    let ExponentPair { e1, e2 } = ExponentPair::new(spec.q(), d)?;
    let e = reduce_exponent(spec, &(BigUint::from(1u32) + BigUint::from(spec.q()) * e1 * e2));
    Ok(spec.pow_unchecked(a, e) == spec.minus_one_power(d as i64 - 1))
}

/// `N(a) = (-1)^(n(d-1))`, necessary for any splitting trinomial.
pub fn necessary_norm_filter(params: &TrinomialParams) -> bool {
    let spec = &params.spec;
    let k = spec.n() as i64 * (params.d as i64 - 1);
    spec.norm_unchecked(&params.a) == spec.minus_one_power(k)
}

/// The closed-form answer for whether the trinomial splits completely.
pub fn predict(params: &TrinomialParams) -> SplitVerdict {
    let spec = &params.spec;
    let d = params.d;
    let case_tag = classify(d, spec.n());
    let mut conditions = Conditions {
        norm: Some(spec.norm_unchecked(&params.a)),
        ..Conditions::default()
    };
    let predicted_splits = match case_tag {
        CaseTag::NoSplitPossible => Prediction::No,
        CaseTag::DividesCase(i) => {
            let value = spec.pow_unchecked(&params.a, dividing_case_exponent(spec, d, i));
            let b_zero = params.b.is_zero();
            let yes = b_zero && value == spec.one();
            conditions.subfield_norm = Some(value);
            conditions.b_is_zero = Some(b_zero);
            if yes {
                Prediction::Yes
            } else {
                Prediction::No
            }
        }
        CaseTag::BoundaryCase => {
            let expected_b = canonical_b_unchecked(spec, d, &params.a);
            let char_power = is_power_of(d as u64 - 1, spec.p());
            let yes = norm_condition_holds(spec, d, &params.a) && params.b == expected_b && char_power;
            conditions.expected_b = Some(expected_b);
            conditions.char_power = Some(char_power);
            if yes {
                Prediction::Yes
            } else {
                Prediction::No
            }
        }
        CaseTag::OutsideTheoremRange => Prediction::Unknown,
    };
    SplitVerdict {
        case_tag,
        predicted_splits,
        conditions,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Build candidates from the closed form and confirm each with `nullity_fast`.
    Theorem,
    /// Test every `(a, b)` pair.
    Exhaustive,
    /// Run both and require identical output.
    Both,
}

/// Worker count for sweeps; 0 uses the global rayon pool. Results never depend on it.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepConfig {
    pub workers: usize,
}

impl SweepConfig {
    pub fn with_workers(workers: usize) -> Self {
        Self { workers }
    }

    fn run<R: Send>(&self, job: impl FnOnce() -> R + Send) -> Result<R> {
        if self.workers == 0 {
            return Ok(job());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        Ok(pool.install(job))
    }
}

pub type Pair = (FieldElement, FieldElement);

/// All `(a, b)` whose trinomial splits completely, sorted by `(code(a), code(b))`.
pub fn enumerate_splitting(spec: &FieldSpec, d: u32, mode: EnumerationMode) -> Result<Vec<Pair>> {
    enumerate_splitting_with(spec, d, mode, &SweepConfig::default())
}

pub fn enumerate_splitting_with(
    spec: &FieldSpec,
    d: u32,
    mode: EnumerationMode,
    config: &SweepConfig,
) -> Result<Vec<Pair>> {
    classify_checked(d, spec.n())?;
    match mode {
        EnumerationMode::Theorem => theorem_candidates(spec, d, config),
        EnumerationMode::Exhaustive => exhaustive_splitting(spec, d, config),
        EnumerationMode::Both => {
            let theorem = theorem_candidates(spec, d, config)?;
            let exhaustive = exhaustive_splitting(spec, d, config)?;
            if theorem != exhaustive {
                return Err(Error::ModeMismatch(format!(
                    "theorem mode found {} pairs, exhaustive mode {}",
                    theorem.len(),
                    exhaustive.len()
                )));
            }
            Ok(theorem)
        }
    }
}

fn theorem_candidates(spec: &FieldSpec, d: u32, config: &SweepConfig) -> Result<Vec<Pair>> {
    let case = classify(d, spec.n());
    if case == CaseTag::OutsideTheoremRange {
        return Err(outside_range(d, spec.n()));
    }
    if spec.order() > THEOREM_SWEEP_LIMIT {
        return Err(Error::InfeasibleSweep(format!(
            "theorem mode scans all {} elements (limit {THEOREM_SWEEP_LIMIT})",
            spec.order()
        )));
    }
    let candidate = |a: &FieldElement| -> Option<FieldElement> {
        match case {
            CaseTag::DividesCase(i) => {
                (spec.pow_unchecked(a, dividing_case_exponent(spec, d, i)) == spec.one()).then(|| spec.zero())
            }
            CaseTag::BoundaryCase => {
                (is_power_of(d as u64 - 1, spec.p()) && norm_condition_holds(spec, d, a))
                    .then(|| canonical_b_unchecked(spec, d, a))
            }
            _ => None,
        }
    };
    let found: Vec<Option<Result<Pair>>> = config.run(|| {
        (0..spec.order())
            .into_par_iter()
            .map(|code| {
                let a = spec.decode_unchecked(code);
                let b = candidate(&a)?;
                let params = TrinomialParams::new(spec, d, a, b).expect("field members");
                if params.nullity() != d as usize {
                    return Some(Err(Error::TheoremViolation(format!(
                        "predicted split fails: a = {}, b = {} in GF({})",
                        spec.encode(&params.a),
                        spec.encode(&params.b),
                        spec
                    ))));
                }
                Some(Ok((params.a, params.b)))
            })
            .collect()
    })?;
    found.into_iter().flatten().collect()
}

fn exhaustive_guard(spec: &FieldSpec) -> Result<()> {
    if spec.order() > EXHAUSTIVE_SWEEP_LIMIT {
        return Err(Error::InfeasibleSweep(format!(
            "exhaustive sweep over {}^2 pairs (field order limit {EXHAUSTIVE_SWEEP_LIMIT})",
            spec.order()
        )));
    }
    Ok(())
}

fn exhaustive_splitting(spec: &FieldSpec, d: u32, config: &SweepConfig) -> Result<Vec<Pair>> {
    exhaustive_guard(spec)?;
    let per_a: Vec<Vec<Pair>> = config.run(|| {
        (0..spec.order())
            .into_par_iter()
            .map(|a_code| {
                let a = spec.decode_unchecked(a_code);
                spec.elements()
                    .filter_map(|b| {
                        let poly = LinearizedPoly::trinomial(spec, d as usize, &a, &b).expect("d >= 2");
                        (poly.nullity_fast() == d as usize).then(|| (a.clone(), b))
                    })
                    .collect()
            })
            .collect()
    })?;
    Ok(per_a.into_iter().flatten().collect())
}

fn outside_range(d: u32, n: u32) -> Error {
    Error::OutsideTheoremRange {
        n,
        d,
        bound: d * (d - 1) + 1,
    }
}

/// Number of splitting trinomials predicted by the closed form.
pub fn count_splitting(spec: &FieldSpec, d: u32) -> Result<u64> {
    let group = spec.order() - 1;
    match classify_checked(d, spec.n())? {
        CaseTag::NoSplitPossible => Ok(0),
        CaseTag::DividesCase(i) => Ok(dividing_case_exponent(spec, d, i).gcd(&group)),
        CaseTag::BoundaryCase => {
            if is_power_of(d as u64 - 1, spec.p()) {
                Ok(spec.norm_exponent())
            } else {
                Ok(0)
            }
        }
        CaseTag::OutsideTheoremRange => Err(outside_range(d, spec.n())),
    }
}

/// A pair on which the closed form and `nullity_fast` disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub a: u64,
    pub b: u64,
    pub predicted: Prediction,
    pub nullity: usize,
}

/// Outcome of an exhaustive sweep of one `(q, d, n)` instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub q: u64,
    pub d: u32,
    pub n: u32,
    pub part: u8,
    pub splitting_count: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Number of pairs per nullity value.
    #[serde(with = "census_keys")]
    pub census: BTreeMap<usize, u64>,
}

mod census_keys {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(census: &BTreeMap<usize, u64>, s: S) -> Result<S::Ok, S::Error> {
        census
            .iter()
            .map(|(k, v)| (format!("nullity_{k}"), *v))
            .collect::<BTreeMap<String, u64>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, u64>, D::Error> {
        BTreeMap::<String, u64>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| {
                k.strip_prefix("nullity_")
                    .and_then(|rest| rest.parse().ok())
                    .map(|k| (k, v))
                    .ok_or_else(|| D::Error::custom(format!("bad census key {k:?}")))
            })
            .collect()
    }
}

fn part_of(case: CaseTag) -> Option<u8> {
    match case {
        CaseTag::NoSplitPossible => Some(1),
        CaseTag::DividesCase(_) => Some(2),
        CaseTag::BoundaryCase => Some(3),
        CaseTag::OutsideTheoremRange => None,
    }
}

/// Exhaustively checks one part of the characterization for `GF(q^n)`, each `n`
/// in `n_list`: every `(a, b)` pair is swept and the closed form compared with
/// `nullity_fast(L) = d`.
pub fn verify_theorem(part: u8, q: u64, d: u32, n_list: &[u32], config: &SweepConfig) -> Result<Vec<TheoremReport>> {
    if !(1..=3).contains(&part) {
        return Err(Error::InvalidParameter(format!("part must be 1, 2 or 3 (got {part})")));
    }
    let (p, s) = prime_power(q).ok_or_else(|| Error::InvalidParameter(format!("q = {q} is not a prime power")))?;
    n_list
        .iter()
        .map(|&n| {
            let case = classify_checked(d, n)?;
            if part_of(case) != Some(part) {
                return Err(Error::InvalidParameter(format!(
                    "(d = {d}, n = {n}) is {case:?}, not covered by part {part}"
                )));
            }
            let spec = make_field(p, s, n)?;
            exhaustive_guard(&spec)?;
            verify_instance(&spec, d, part, config)
        })
        .collect()
}

fn verify_instance(spec: &FieldSpec, d: u32, part: u8, config: &SweepConfig) -> Result<TheoremReport> {
    struct Shard {
        census: BTreeMap<usize, u64>,
        counterexamples: Vec<Counterexample>,
    }
    let shards: Vec<Shard> = config.run(|| {
        (0..spec.order())
            .into_par_iter()
            .map(|a_code| {
                let a = spec.decode_unchecked(a_code);
                let mut shard = Shard {
                    census: BTreeMap::new(),
                    counterexamples: Vec::new(),
                };
                for b in spec.elements() {
                    let params = TrinomialParams::new(spec, d, a.clone(), b).expect("field members");
                    let nullity = params.nullity();
                    *shard.census.entry(nullity).or_default() += 1;
                    let predicted = predict(&params).predicted_splits;
                    let splits = nullity == d as usize;
                    if (predicted == Prediction::Yes) != splits {
                        shard.counterexamples.push(Counterexample {
                            a: a_code,
                            b: spec.encode(&params.b),
                            predicted,
                            nullity,
                        });
                    }
                }
                shard
            })
            .collect()
    })?;
    let mut census = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for shard in shards {
        for (k, v) in shard.census {
            *census.entry(k).or_default() += v;
        }
        counterexamples.extend(shard.counterexamples);
    }
    Ok(TheoremReport {
        q: spec.q(),
        d,
        n: spec.n(),
        part,
        splitting_count: census.get(&(d as usize)).copied().unwrap_or(0),
        counterexamples,
        census,
    })
}
