//! Exact polynomial engine: discriminants, Sturm signatures, factorisation over `Z` and
//! `F_p`, Frobenius sieving, two-set resolvents and classification from a defining polynomial.
//!
//! All decisions use exact integer or rational arithmetic.

mod classify;
mod factor;
mod galois;
pub mod modp;
mod poly;
mod resolvent;
mod resultant;
mod sturm;

use thiserror::Error;

use crate::classifier::{ClassifierError, Signature};
use crate::permgroup::{PermError, TransitiveLabel};

pub use classify::{classify_field, cubic_subfield_signature, ClassificationResult, CubicSubfield, QuadraticSubfield};
pub use factor::{factor_squarefree, is_irreducible};
pub use galois::{
    frobenius_pattern, frobenius_patterns, identify_galois, identify_galois_with_budget, is_square, pair_orbit_sizes,
    Elimination, GaloisIdentification, IdentificationMethod, DEFAULT_PRIME_BUDGET, MIN_PRIMES_BEFORE_STOP,
};
pub use poly::IntegerPolynomial;
pub use resolvent::{pair_sum_polynomial, poly_sqrt, two_set_resolvent, ResolventReport, MAX_TSCHIRNHAUS};
pub use resultant::{discriminant, resultant};
pub use sturm::{count_real_roots, count_real_roots_between, signature, sturm_sequence};

/// Signature `(r1, r2)` of a polynomial, shared with the group-theoretic side.
pub type SignatureResult = Signature;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumfieldError {
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("the zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("polynomial is not squarefree (discriminant 0)")]
    NotSquarefree,
    #[error("polynomial is reducible over Q")]
    Reducible,
    #[error("degree {0} is not supported here")]
    UnsupportedDegree(usize),
    #[error("field is not totally imaginary: signature {0}")]
    NotTotallyImaginary(Signature),
    #[error("Galois group not determined; remaining candidates {0:?}")]
    UnresolvedGalois(Vec<TransitiveLabel>),
    #[error("no squarefree resolvent after substitutions up to k = {0}")]
    ShiftBudgetExhausted(u32),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error(transparent)]
    Group(#[from] PermError),
}
