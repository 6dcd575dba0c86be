use crate::permgroup::TransitiveLabel;

use super::{ClassifierError, Dichotomy, Evidence, FieldType, FieldTypeVerdict, Signature};

/// Indices `k` of the labels `6Tk` that contain a (2,2,2) element.
pub const ADMISSIBLE_SEXTIC: [usize; 11] = [1, 2, 3, 5, 6, 8, 9, 11, 13, 14, 16];

pub fn is_admissible_sextic(label: TransitiveLabel) -> bool {
    label.degree == 6 && ADMISSIBLE_SEXTIC.contains(&label.index)
}

fn verdict(category: FieldType, row: &str) -> FieldTypeVerdict {
    FieldTypeVerdict { category, evidence: Some(Evidence::Table { row: row.to_string() }), beyond_paper_table: false }
}

/// Table lookup for totally imaginary sextic fields. Labels 6T3 and 6T11 split on
/// whether the unique cubic subfield is totally real.
pub fn classify_sextic(
    label: TransitiveLabel,
    cubic_signature: Option<Signature>,
) -> Result<FieldTypeVerdict, ClassifierError> {
    if label.degree != 6 {
        return Err(ClassifierError::WrongDegree { expected: 6, label });
    }
    let cubic_real = |label| match cubic_signature {
        Some(s) if s.degree() == 3 => Ok(s.is_totally_real()),
        Some(s) => Err(ClassifierError::InconsistentSignature { n: 3, r2: s.r2 }),
        None => Err(ClassifierError::MissingCubicSignature(label)),
    };
    use FieldType::*;
    Ok(match label.index {
        1 => verdict(CmField, "C6: imaginary quadratic, totally real cubic"),
        2 => verdict(CmTypeNotCm, "S3: imaginary quadratic, mixed signature cubic"),
        3 => {
            if cubic_real(label)? {
                verdict(CmField, "D6 case (i): imaginary quadratic, totally real cubic")
            } else {
                verdict(CmTypeNotCm, "D6 case (ii): imaginary quadratic, mixed signature cubic")
            }
        }
        5 => verdict(CmTypeNotCm, "S3xC3: imaginary quadratic"),
        6 => verdict(CmField, "A4xC2: totally real cubic"),
        8 => verdict(TrType, "S4: mixed signature cubic"),
        9 => verdict(CmTypeNotCm, "S3xS3: imaginary quadratic"),
        11 => {
            if cubic_real(label)? {
                verdict(CmField, "S4xC2 case (i): totally real cubic")
            } else {
                verdict(TrType, "S4xC2 case (ii): mixed signature cubic")
            }
        }
        13 => verdict(CmTypeNotCm, "C3^2:D4: imaginary quadratic"),
        14 => verdict(TrType, "S5: no proper subfield"),
        16 => verdict(TrType, "S6: no proper subfield"),
        _ => return Err(ClassifierError::InadmissibleLabel(label)),
    })
}

/// A totally imaginary quartic is TR-type exactly when it is primitive, i.e. `G` is A4 or S4.
pub fn classify_quartic(label: TransitiveLabel) -> Result<Dichotomy, ClassifierError> {
    match (label.degree, label.index) {
        (4, 1..=3) => Ok(Dichotomy::CmType),
        (4, 4 | 5) => Ok(Dichotomy::TrType),
        _ => Err(ClassifierError::WrongDegree { expected: 4, label }),
    }
}

/// `true` when a field of degree `n` with `r2` complex places cannot have Galois group `A_n`:
/// the discriminant has sign `(-1)^r2`, so its square root field is imaginary when `r2` is odd.
pub fn an_exclusion_check(n: usize, r2: usize) -> Result<bool, ClassifierError> {
    if 2 * r2 > n {
        return Err(ClassifierError::InconsistentSignature { n, r2 });
    }
    Ok(r2 % 2 == 1)
}
