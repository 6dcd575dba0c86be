use serde::Serialize;

use crate::permgroup::{core, count_fixed_cosets, intermediate_subgroups, PermError, Permutation, PermutationGroup};

use super::{ClassifierError, FieldType, GroupConfiguration, Signature};

/// Why a verdict was reached.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// `F_s^{K1}` is a CM field with totally real subfield `F_s^{K0}`.
    Subgroups {
        k0: PermutationGroup,
        k1: PermutationGroup,
        cm_subfield_degree: usize,
        totally_real_subfield_degree: usize,
    },
    /// A row of the classification table.
    Table { row: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldTypeVerdict {
    pub category: FieldType,
    pub evidence: Option<Evidence>,
    /// Set when the category refines what the published tables state.
    pub beyond_paper_table: bool,
}

impl FieldTypeVerdict {
    /// The CM witness pair, when there is one.
    pub fn witness(&self) -> Option<(&PermutationGroup, &PermutationGroup)> {
        match &self.evidence {
            Some(Evidence::Subgroups { k0, k1, .. }) => Some((k0, k1)),
            _ => None,
        }
    }
}

/// A subfield `F_s^K` of `F`.
#[derive(Clone, Debug, Serialize)]
pub struct SubfieldReport {
    pub index: usize,
    pub degree: usize,
    pub signature: Signature,
    pub is_galois_over_q: bool,
}

/// Signature of `F_s^K`: real embeddings are the cosets of `G/K` fixed by `c`.
pub fn subfield_signature(
    g: &PermutationGroup,
    k: &PermutationGroup,
    c: &Permutation,
) -> Result<Signature, ClassifierError> {
    if !k.is_subgroup_of(g) {
        return Err(PermError::NotASubgroup.into());
    }
    if !g.contains(c) {
        return Err(PermError::NotAnElement(c.to_string()).into());
    }
    if c.order() > 2 {
        return Err(ClassifierError::NotAnInvolution(c.order()));
    }
    let index = k.index_in(g);
    let r1 = count_fixed_cosets(g, k, c);
    Ok(Signature::new(r1, (index - r1) / 2))
}

/// Searches `H ⊆ K1 ⊂ K0 ⊆ G` with `[K0:K1] = 2`, `F_s^{K0}` totally real
/// (`c ∈ core(G, K0)`) and `F_s^{K1}` totally imaginary.
pub fn classify_configuration(cfg: &GroupConfiguration) -> Result<FieldTypeVerdict, ClassifierError> {
    let g = cfg.group();
    let h = cfg.stabilizer();
    let c = cfg.conjugation();
    let tower = intermediate_subgroups(g, h)?;
    for k1 in &tower {
        let k1 = &k1.group;
        if count_fixed_cosets(g, k1, c) != 0 {
            continue;
        }
        for k0 in &tower {
            let k0 = &k0.group;
            if k0.order() != 2 * k1.order() || !k1.is_subgroup_of(k0) {
                continue;
            }
            if core(g, k0)?.contains(c) {
                let category = if k1.order() == h.order() { FieldType::CmField } else { FieldType::CmTypeNotCm };
                return Ok(FieldTypeVerdict {
                    category,
                    evidence: Some(Evidence::Subgroups {
                        k0: k0.clone(),
                        k1: k1.clone(),
                        cm_subfield_degree: k1.index_in(g),
                        totally_real_subfield_degree: k0.index_in(g),
                    }),
                    beyond_paper_table: false,
                });
            }
        }
    }
    Ok(FieldTypeVerdict { category: FieldType::TrType, evidence: None, beyond_paper_table: false })
}

/// The proper subfields `Q ⊊ F_s^K ⊊ F`, smallest degree first.
pub fn subfield_reports(cfg: &GroupConfiguration) -> Result<Vec<SubfieldReport>, ClassifierError> {
    let g = cfg.group();
    let mut out = Vec::new();
    for k in intermediate_subgroups(g, cfg.stabilizer())?.iter().rev() {
        if !k.proper {
            continue;
        }
        out.push(SubfieldReport {
            index: k.index,
            degree: k.index,
            signature: subfield_signature(g, &k.group, cfg.conjugation())?,
            is_galois_over_q: k.group.is_normal_in(g),
        });
    }
    Ok(out)
}
