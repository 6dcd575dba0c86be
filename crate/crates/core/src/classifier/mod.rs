//! CM / TR classification from group data.
//!
//! A field `F` of degree `n` with Galois closure `F_s` is modelled by `(G, H, c)`:
//! `G = Gal(F_s/Q)`, `H = Gal(F_s/F)` and `c` the restriction of complex conjugation.
//! Subfields of `F` are fixed fields `F_s^K` with `H ⊆ K ⊆ G`, and the real embeddings
//! of `F_s^K` are the cosets of `G/K` fixed by `c`.

mod config;
mod oracle;
mod table;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::permgroup::{PermError, TransitiveLabel};

pub use config::{valid_configurations, GroupConfiguration};
pub use oracle::{
    classify_configuration, subfield_reports, subfield_signature, Evidence, FieldTypeVerdict, SubfieldReport,
};
pub use table::{an_exclusion_check, classify_quartic, classify_sextic, is_admissible_sextic, ADMISSIBLE_SEXTIC};
pub use verify::{verify_case_analysis, Check, VerificationReport};

/// Signature `(r1, r2)`: real embeddings and pairs of complex embeddings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub r1: usize,
    pub r2: usize,
}

impl Signature {
    pub fn new(r1: usize, r2: usize) -> Self {
        Signature { r1, r2 }
    }

    pub fn degree(&self) -> usize {
        self.r1 + 2 * self.r2
    }

    pub fn is_totally_real(&self) -> bool {
        self.r2 == 0
    }

    pub fn is_totally_imaginary(&self) -> bool {
        self.r1 == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r1, self.r2)
    }
}

/// The three-way classification of a totally imaginary field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FieldType {
    /// `F` is itself a CM field.
    CmField,
    /// `F` is not CM but contains a CM subfield.
    CmTypeNotCm,
    /// `F` contains no CM subfield.
    TrType,
}

impl FieldType {
    pub fn as_str(&self) -> &'static str {
        match self {
            FieldType::CmField => "CM_FIELD",
            FieldType::CmTypeNotCm => "CM_TYPE_NOT_CM",
            FieldType::TrType => "TR_TYPE",
        }
    }

    pub fn dichotomy(&self) -> Dichotomy {
        match self {
            FieldType::CmField | FieldType::CmTypeNotCm => Dichotomy::CmType,
            FieldType::TrType => Dichotomy::TrType,
        }
    }
}

impl fmt::Display for FieldType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// CM-type versus TR-type, without separating CM fields from the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Dichotomy {
    CmType,
    TrType,
}

impl fmt::Display for Dichotomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dichotomy::CmType => "CM_TYPE",
            Dichotomy::TrType => "TR_TYPE",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifierError {
    #[error(transparent)]
    Group(#[from] PermError),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("{0} is not the Galois group of a totally imaginary sextic field")]
    InadmissibleLabel(TransitiveLabel),
    #[error("{0} needs the signature of its cubic subfield")]
    MissingCubicSignature(TransitiveLabel),
    #[error("expected a label of degree {expected}, got {label}")]
    WrongDegree { expected: usize, label: TransitiveLabel },
    #[error("element of order {0} cannot be complex conjugation")]
    NotAnInvolution(u64),
    #[error("signature inconsistent: n = {n}, r2 = {r2}")]
    InconsistentSignature { n: usize, r2: usize },
}
