use std::collections::BTreeMap;

use serde::Serialize;

use crate::census::CensusEntry;
use crate::classifier::FieldType;
use crate::numfield::{classify_field, signature, ClassificationResult, CubicSubfield, IntegerPolynomial};

use super::LmfdbRecord;

#[derive(Clone, Debug, Serialize)]
pub struct ValidationEntry {
    pub label: String,
    pub galois_expected: String,
    pub galois_observed: Option<String>,
    pub cm_expected: bool,
    pub category_observed: Option<FieldType>,
    /// Category implied by the row's CM flag and subfields, when subfields are present.
    pub category_expected: Option<FieldType>,
    pub cubic_expected: Option<CubicSubfield>,
    pub cubic_observed: Option<CubicSubfield>,
    pub mismatches: Vec<String>,
    pub error: Option<String>,
}

impl ValidationEntry {
    pub fn agrees(&self) -> bool {
        self.error.is_none() && self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LabelSummary {
    pub total: usize,
    pub agree: usize,
    pub disagree: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub entries: Vec<ValidationEntry>,
    pub per_label: BTreeMap<String, LabelSummary>,
    /// `true` when every row was fetched from the database itself.
    pub database_backed: bool,
}

impl ValidationReport {
    pub fn total(&self) -> usize {
        self.entries.len()
    }

    pub fn agreements(&self) -> usize {
        self.entries.iter().filter(|e| e.agrees()).count()
    }

    pub fn all_agree(&self) -> bool {
        self.agreements() == self.total()
    }

    pub fn failures(&self) -> impl Iterator<Item = &ValidationEntry> {
        self.entries.iter().filter(|e| !e.agrees())
    }
}

fn is_imaginary_quadratic(q: &IntegerPolynomial) -> bool {
    q.degree() == 2 && signature(q).is_ok_and(|s| s.r1 == 0)
}

/// Category from database data: CM flag first, then a CM subfield. In degrees 4 and 6 the
/// only possible CM proper subfields are imaginary quadratic.
fn expected_category(r: &LmfdbRecord) -> Option<FieldType> {
    let subs = r.subfield_polynomials()?;
    Some(if r.is_cm {
        FieldType::CmField
    } else if subs.iter().any(is_imaginary_quadratic) {
        FieldType::CmTypeNotCm
    } else {
        FieldType::TrType
    })
}

fn expected_cubic(r: &LmfdbRecord) -> Option<CubicSubfield> {
    if r.degree != 6 {
        return None;
    }
    let cubics: Vec<IntegerPolynomial> = r.subfield_polynomials()?.into_iter().filter(|q| q.degree() == 3).collect();
    if cubics.is_empty() {
        return Some(CubicSubfield::None);
    }
    let real = cubics.iter().filter(|q| signature(q).is_ok_and(|s| s.is_totally_real())).count();
    Some(if real == cubics.len() { CubicSubfield::TotallyReal } else { CubicSubfield::Mixed })
}

fn validate_one(r: &LmfdbRecord) -> (ValidationEntry, Option<ClassificationResult>) {
    let mut entry = ValidationEntry {
        label: r.label.clone(),
        galois_expected: r.galois_label.clone(),
        galois_observed: None,
        cm_expected: r.is_cm,
        category_observed: None,
        category_expected: expected_category(r),
        cubic_expected: expected_cubic(r),
        cubic_observed: None,
        mismatches: Vec::new(),
        error: None,
    };
    let result = match classify_field(&r.polynomial()) {
        Ok(res) => res,
        Err(e) => {
            entry.error = Some(e.to_string());
            return (entry, None);
        }
    };
    let galois = result.galois.label.to_string();
    let category = result.verdict.category;
    if galois != r.galois_label {
        entry.mismatches.push(format!("Galois group {galois}, database {}", r.galois_label));
    }
    if (category == FieldType::CmField) != r.is_cm {
        entry.mismatches.push(format!("verdict {category:?}, database cm = {}", r.is_cm));
    }
    if let Some(expected) = entry.category_expected {
        if expected != category {
            entry.mismatches.push(format!("verdict {category:?}, subfield data implies {expected:?}"));
        }
    }
    if let (Some(expected), Some(observed)) = (entry.cubic_expected, result.cubic_subfield) {
        if expected != observed {
            entry.mismatches.push(format!("cubic subfield {observed:?}, database {expected:?}"));
        }
    }
    entry.galois_observed = Some(galois);
    entry.category_observed = Some(category);
    entry.cubic_observed = result.cubic_subfield;
    (entry, Some(result))
}

fn classify_all(records: &[LmfdbRecord]) -> Vec<(ValidationEntry, Option<ClassificationResult>)> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(16);
    let chunk = records.len().div_ceil(workers).max(1);
    std::thread::scope(|s| {
        let handles: Vec<_> =
            records.chunks(chunk).map(|c| s.spawn(move || c.iter().map(validate_one).collect::<Vec<_>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("validation worker panicked")).collect()
    })
}

/// Classifies every row's polynomial and compares the verdict with the row's CM flag,
/// Galois label and, when present, subfield data. Classification failures are reported
/// per row rather than aborting the run.
pub fn cross_validate(records: &[LmfdbRecord]) -> ValidationReport {
    let entries: Vec<ValidationEntry> = classify_all(records).into_iter().map(|(e, _)| e).collect();
    let mut per_label: BTreeMap<String, LabelSummary> = BTreeMap::new();
    for e in &entries {
        let s = per_label.entry(e.galois_expected.clone()).or_default();
        s.total += 1;
        if e.error.is_some() {
            s.errors += 1;
        } else if e.agrees() {
            s.agree += 1;
        } else {
            s.disagree += 1;
        }
    }
    ValidationReport { entries, per_label, database_backed: records.iter().all(LmfdbRecord::from_database) }
}

/// Census entries for totally imaginary rows, using this crate's verdicts. Rows that fail
/// to classify are returned separately by label.
pub fn census_entries(records: &[LmfdbRecord]) -> (Vec<CensusEntry>, Vec<String>) {
    let ti: Vec<LmfdbRecord> = records.iter().filter(|r| r.r1() == 0).cloned().collect();
    let mut entries = Vec::new();
    let mut failed = Vec::new();
    for (r, (e, res)) in ti.iter().zip(classify_all(&ti)) {
        match res {
            Some(res) => entries.push(CensusEntry {
                degree: res.degree,
                r1: res.signature.r1,
                abs_disc: r.abs_disc.clone(),
                category: res.verdict.category,
            }),
            None => failed.push(e.label),
        }
    }
    (entries, failed)
}
