use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::classifier::{
    classify_quartic, classify_sextic, is_admissible_sextic, Dichotomy, Evidence, FieldType, FieldTypeVerdict,
    Signature,
};
use crate::permgroup::{intermediate_subgroups, reference_group, TransitiveLabel};

use super::{
    discriminant, identify_galois, is_irreducible, signature, two_set_resolvent, GaloisIdentification,
    IntegerPolynomial, NumfieldError, ResolventReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CubicSubfield {
    TotallyReal,
    Mixed,
    None,
}

impl CubicSubfield {
    pub fn signature(self) -> Option<Signature> {
        match self {
            CubicSubfield::TotallyReal => Some(Signature::new(3, 0)),
            CubicSubfield::Mixed => Some(Signature::new(1, 1)),
            CubicSubfield::None => None,
        }
    }
}

/// A quadratic subfield of a quartic field, given by a defining polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct QuadraticSubfield {
    pub polynomial: IntegerPolynomial,
    pub signature: Signature,
}

fn big_string<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    pub polynomial: IntegerPolynomial,
    pub degree: usize,
    pub signature: Signature,
    #[serde(serialize_with = "big_string")]
    pub discriminant: BigInt,
    pub galois: GaloisIdentification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cubic_subfield: Option<CubicSubfield>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub quadratic_subfields: Vec<QuadraticSubfield>,
    pub verdict: FieldTypeVerdict,
}

/// Number of cubic subfields of a sextic field with the given Galois group.
fn expected_cubic_subfields(label: TransitiveLabel) -> Result<usize, NumfieldError> {
    let g = reference_group(label);
    let h = g.stabilizer(0);
    Ok(intermediate_subgroups(g, &h)?.iter().filter(|k| k.index == 3).count())
}

fn cubic_from_report(label: TransitiveLabel, report: &ResolventReport) -> Result<CubicSubfield, NumfieldError> {
    let expected = expected_cubic_subfields(label)?;
    let cubics = &report.cubic_factors;
    if cubics.len() != expected {
        return Err(NumfieldError::Inconsistent(format!(
            "{label} has {expected} cubic subfields but the resolvent has {} cubic factors",
            cubics.len()
        )));
    }
    if cubics.is_empty() {
        return Ok(CubicSubfield::None);
    }
    let real = cubics.iter().filter(|(_, s)| s.is_totally_real()).count();
    if real == cubics.len() {
        Ok(CubicSubfield::TotallyReal)
    } else if real == 0 {
        Ok(CubicSubfield::Mixed)
    } else {
        Err(NumfieldError::Inconsistent("cubic subfields of different signatures".into()))
    }
}

/// Signature class of the cubic subfield of a totally imaginary sextic field. The cubic
/// factors of the two-set resolvent are generated by block sums; their number is checked
/// against the subfield count of the identified Galois group.
pub fn cubic_subfield_signature(f: &IntegerPolynomial) -> Result<CubicSubfield, NumfieldError> {
    if f.degree() != 6 {
        return Err(NumfieldError::UnsupportedDegree(f.degree()));
    }
    let sig = signature(f)?;
    if sig.r1 != 0 {
        return Err(NumfieldError::NotTotallyImaginary(sig));
    }
    let label = identify_galois(f)?.label;
    cubic_from_report(label, &two_set_resolvent(f)?)
}

fn table_verdict(category: FieldType, row: &str, beyond: bool) -> FieldTypeVerdict {
    FieldTypeVerdict { category, evidence: Some(Evidence::Table { row: row.to_string() }), beyond_paper_table: beyond }
}

/// Classifies the field defined by an irreducible totally imaginary quartic or sextic.
pub fn classify_field(f: &IntegerPolynomial) -> Result<ClassificationResult, NumfieldError> {
    let f = f.primitive_part();
    let n = f.degree();
    if n != 4 && n != 6 {
        return Err(NumfieldError::UnsupportedDegree(n));
    }
    if !is_irreducible(&f)? {
        return Err(NumfieldError::Reducible);
    }
    let sig = signature(&f)?;
    if sig.r1 != 0 {
        return Err(NumfieldError::NotTotallyImaginary(sig));
    }
    let disc = discriminant(&f)?;
    let galois = identify_galois(&f)?;
    let label = galois.label;
    let mut cubic_subfield = None;
    let mut quadratic_subfields = Vec::new();
    let verdict = if n == 4 {
        match classify_quartic(label)? {
            Dichotomy::TrType => table_verdict(FieldType::TrType, "primitive quartic (A4 or S4)", false),
            Dichotomy::CmType => {
                let report = two_set_resolvent(&f)?;
                for q in report.factors.iter().filter(|q| q.degree() == 2) {
                    quadratic_subfields.push(QuadraticSubfield { polynomial: q.clone(), signature: signature(q)? });
                }
                if quadratic_subfields.is_empty() {
                    return Err(NumfieldError::Inconsistent(format!("{label} quartic without a quadratic subfield")));
                }
                if quadratic_subfields.iter().any(|q| q.signature.is_totally_real()) {
                    table_verdict(FieldType::CmField, "imprimitive quartic with a real quadratic subfield", true)
                } else {
                    table_verdict(FieldType::CmTypeNotCm, "imprimitive quartic, imaginary quadratic subfields", true)
                }
            }
        }
    } else {
        if !is_admissible_sextic(label) {
            return Err(NumfieldError::Inconsistent(format!(
                "{label} contains no (2,2,2) element, so it cannot be the group of a totally imaginary sextic"
            )));
        }
        let cubic = cubic_from_report(label, &two_set_resolvent(&f)?)?;
        cubic_subfield = Some(cubic);
        classify_sextic(label, cubic.signature())?
    };
    debug_assert_eq!(disc.is_negative(), sig.r2 % 2 == 1);
    Ok(ClassificationResult {
        polynomial: f,
        degree: n,
        signature: sig,
        discriminant: disc,
        galois,
        cubic_subfield,
        quadratic_subfields,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntegerPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(classify_field(&p("x^3 - x - 1")), Err(NumfieldError::UnsupportedDegree(3))));
        assert!(matches!(classify_field(&p("x^4 - 5x^2 + 5")), Err(NumfieldError::NotTotallyImaginary(_))));
        assert!(matches!(classify_field(&p("x^4 + 2x^2 + 1")), Err(NumfieldError::Reducible)));
        assert!(matches!(cubic_subfield_signature(&p("x^4 + 1")), Err(NumfieldError::UnsupportedDegree(4))));
    }

    #[test]
    fn quartic_refinement() {
        // Q(zeta_5) is CM over Q(sqrt 5).
        let r = classify_field(&p("x^4 + x^3 + x^2 + x + 1")).unwrap();
        assert_eq!(r.verdict.category, FieldType::CmField);
        assert!(r.verdict.beyond_paper_table);
        let r = classify_field(&p("x^4 - x + 1")).unwrap();
        assert_eq!(r.verdict.category, FieldType::TrType);
        assert!(!r.verdict.beyond_paper_table);
    }
}
