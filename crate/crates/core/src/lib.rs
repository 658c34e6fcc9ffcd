//! Rank and nullity of linearized polynomials over finite fields.
//!
//! The nullity of `L(x) = Σ a_i x^(q^i)` acting on GF(q^n) equals the nullity of
//! `A_L - I`, where `A_L` is the product of the companion matrix of `L` with its
//! successive q-Frobenius twists. On top of that criterion the crate
//! characterizes the trinomials `x^(q^d) - b x^q - a x` that split completely,
//! checks the supporting number-theoretic lemmas against brute-force oracles, and
//! evaluates the cost of quasi-subfield-polynomial ECDLP attacks.
//!
//! Modules:
//! - [`ff`]: GF(q^n) construction and arithmetic.
//! - [`matrix`]: dense matrices over a field.
//! - [`linpoly`]: linearized polynomials, companion matrices, nullity.
//! - [`trinomial`]: split predictions, enumeration and theorem sweeps.
//! - [`numtheory`]: gcd of `x^k ± 1`, binomials mod p, exponent lemmas.
//! - [`qsp`]: quasi-subfield predicate and attack-cost estimates.

pub mod error;
pub mod ff;
pub mod linpoly;
pub mod matrix;
pub mod numtheory;
pub mod prime_field;
pub mod qsp;
pub mod trinomial;

pub use error::{Error, Result};
pub use ff::{make_field, FieldElement, FieldSpec};
pub use linpoly::LinearizedPoly;
pub use matrix::FieldMatrix;
