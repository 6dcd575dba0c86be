use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::group::{coset_action, generate, PermutationGroup};
use super::lattice::all_subgroups;
use super::perm::{CycleType, Permutation};
use super::PermError;

/// A transitive-group label `nTk` as used by the GAP/Magma/LMFDB databases.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransitiveLabel {
    pub degree: usize,
    pub index: usize,
}

const QUARTIC_NAMES: [&str; 5] = ["C4", "V4", "D4", "A4", "S4"];
const SEXTIC_NAMES: [&str; 16] = [
    "C6", "S3", "D6", "A4", "S3xC3", "A4xC2", "S4+", "S4", "S3xS3", "C3^2:C4", "S4xC2", "PSL(2,5)", "C3^2:D4",
    "PGL(2,5)", "A6", "S6",
];

impl TransitiveLabel {
    pub fn new(degree: usize, index: usize) -> Result<Self, PermError> {
        let count = match degree {
            4 => 5,
            6 => 16,
            _ => return Err(PermError::UnsupportedDegree(degree)),
        };
        if index == 0 || index > count {
            return Err(PermError::UnknownLabel(format!("{degree}T{index}")));
        }
        Ok(TransitiveLabel { degree, index })
    }

    pub fn name(&self) -> &'static str {
        match self.degree {
            4 => QUARTIC_NAMES[self.index - 1],
            _ => SEXTIC_NAMES[self.index - 1],
        }
    }
}

impl fmt::Display for TransitiveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}T{}", self.degree, self.index)
    }
}

impl fmt::Debug for TransitiveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self, self.name())
    }
}

impl FromStr for TransitiveLabel {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        let bad = || PermError::UnknownLabel(s.to_string());
        let (d, k) = s.trim().split_once(['T', 't']).ok_or_else(bad)?;
        let degree = d.parse().map_err(|_| bad())?;
        let index = k.parse().map_err(|_| bad())?;
        TransitiveLabel::new(degree, index).map_err(|_| bad())
    }
}

impl Serialize for TransitiveLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TransitiveLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn perm(n: usize, cycles: &str) -> Permutation {
    Permutation::parse_cycles(n, cycles).expect("reference generator")
}

fn group(n: usize, gens: &[&str]) -> PermutationGroup {
    let gens: Vec<Permutation> = gens.iter().map(|c| perm(n, c)).collect();
    generate(&gens, n).expect("reference group")
}

/// `big` acting on the left cosets of `small`, relabelled onto 0..[big:small].
fn on_cosets(n: usize, big: &[&str], small: &[&str]) -> PermutationGroup {
    let g = group(n, big);
    let k = group(n, small);
    coset_action(&g, &k).expect("reference subgroup").image
}

fn build_references() -> Vec<(TransitiveLabel, PermutationGroup)> {
    let s4 = ["(0 1 2 3)", "(0 1)"];
    let quartic = vec![
        group(4, &["(0 1 2 3)"]),
        group(4, &["(0 1)(2 3)", "(0 2)(1 3)"]),
        group(4, &["(0 1 2 3)", "(0 2)"]),
        group(4, &["(0 1 2)", "(1 2 3)"]),
        group(4, &s4),
    ];
    let sextic = vec![
        group(6, &["(0 1 2 3 4 5)"]),
        on_cosets(3, &["(0 1 2)", "(0 1)"], &[]),
        group(6, &["(0 1 2 3 4 5)", "(1 5)(2 4)"]),
        on_cosets(4, &["(0 1 2)", "(1 2 3)"], &["(0 1)(2 3)"]),
        group(6, &["(0 1 2)", "(0 3)(1 4)(2 5)"]),
        group(6, &["(0 1 2)(3 4 5)", "(0 3)"]),
        on_cosets(4, &s4, &["(0 1)", "(2 3)"]),
        on_cosets(4, &s4, &["(0 1 2 3)"]),
        on_cosets(6, &["(0 1 2)", "(0 1)", "(3 4 5)", "(3 4)"], &["(0 1 2)(3 4 5)", "(0 1)(3 4)"]),
        group(6, &["(0 1 2)", "(3 4 5)", "(0 3 1 4)(2 5)"]),
        group(6, &["(0 3)", "(0 1 2)(3 4 5)", "(0 1)(3 4)"]),
        group(6, &["(0 1 2 3 4)", "(0 5)(1 4)"]),
        group(6, &["(0 1 2)", "(3 4 5)", "(0 3 1 4)(2 5)", "(3 4)"]),
        group(6, &["(0 1 2 3 4)", "(1 2 4 3)", "(0 5)(1 4)"]),
        group(6, &["(0 1 2)", "(1 2 3)", "(2 3 4)", "(3 4 5)"]),
        group(6, &["(0 1 2 3 4 5)", "(0 1)"]),
    ];
    let mut out = Vec::new();
    for (i, g) in quartic.into_iter().enumerate() {
        out.push((TransitiveLabel { degree: 4, index: i + 1 }, g));
    }
    for (i, g) in sextic.into_iter().enumerate() {
        out.push((TransitiveLabel { degree: 6, index: i + 1 }, g));
    }
    out
}

fn references() -> &'static [(TransitiveLabel, PermutationGroup)] {
    static REFS: OnceLock<Vec<(TransitiveLabel, PermutationGroup)>> = OnceLock::new();
    REFS.get_or_init(build_references)
}

/// All catalogued labels of the given degree, in index order.
pub fn transitive_labels(degree: usize) -> Result<Vec<TransitiveLabel>, PermError> {
    if degree != 4 && degree != 6 {
        return Err(PermError::UnsupportedDegree(degree));
    }
    Ok(references().iter().filter(|(l, _)| l.degree == degree).map(|(l, _)| *l).collect())
}

/// The reference permutation group for a label.
pub fn reference_group(label: TransitiveLabel) -> &'static PermutationGroup {
    &references().iter().find(|(l, _)| *l == label).expect("labels are validated on construction").1
}

/// Some `σ ∈ S_n` with `σ G σ^-1 = R`, assuming `|G| = |R|`.
fn conjugate_into(g: &PermutationGroup, r: &PermutationGroup) -> Option<Permutation> {
    PermutationGroup::symmetric(g.degree())
        .elements()
        .iter()
        .find(|s| g.generators().iter().all(|x| r.contains(&x.conjugate_by(s))))
        .cloned()
}

/// Matches `g` against the reference groups: order and cycle-type histogram narrow the
/// candidates, and an explicit conjugating permutation confirms the match.
pub fn identify_transitive_label(g: &PermutationGroup) -> Result<TransitiveLabel, PermError> {
    let n = g.degree();
    if n != 4 && n != 6 {
        return Err(PermError::UnsupportedDegree(n));
    }
    if !g.is_transitive() {
        return Err(PermError::NotTransitive);
    }
    let counts = g.cycle_type_counts();
    references()
        .iter()
        .filter(|(l, r)| l.degree == n && r.order() == g.order() && r.cycle_type_counts() == counts)
        .find(|(_, r)| conjugate_into(g, r).is_some())
        .map(|(l, _)| *l)
        .ok_or_else(|| PermError::NotAGroup("transitive group missing from the catalogue".into()))
}

/// The transitive subgroups of `S6` up to conjugacy, found by exhaustive subgroup
/// enumeration of `S6` and labelled against the references.
pub fn s6_transitive_classes() -> Result<&'static [(TransitiveLabel, PermutationGroup)], PermError> {
    static CLASSES: OnceLock<Vec<(TransitiveLabel, PermutationGroup)>> = OnceLock::new();
    if let Some(c) = CLASSES.get() {
        return Ok(c);
    }
    let list = all_subgroups(&PermutationGroup::symmetric(6))?;
    let mut found = Vec::new();
    for rep in list.representatives() {
        if rep.is_transitive() {
            found.push((identify_transitive_label(rep)?, rep.clone()));
        }
    }
    found.sort_by_key(|(l, _)| *l);
    Ok(CLASSES.get_or_init(|| found))
}

fn has_triple_transposition(g: &PermutationGroup) -> bool {
    let target = CycleType::new(vec![2, 2, 2]);
    g.elements().iter().any(|x| x.cycle_type() == target)
}

/// Transitive subgroup classes of `S6` containing an element of cycle type (2,2,2).
pub fn s6_groups_with_222() -> Result<Vec<TransitiveLabel>, PermError> {
    Ok(s6_transitive_classes()?.iter().filter(|(_, g)| has_triple_transposition(g)).map(|(l, _)| *l).collect())
}

/// Pairs of labels of the same degree whose groups realise the same set of cycle types,
/// so that Frobenius sieving alone cannot tell them apart.
pub fn cycle_type_ambiguities(degree: usize) -> Result<Vec<(TransitiveLabel, TransitiveLabel)>, PermError> {
    let labels = transitive_labels(degree)?;
    let sets: Vec<BTreeSet<CycleType>> =
        labels.iter().map(|&l| reference_group(l).cycle_type_counts().into_keys().collect()).collect();
    let mut out = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if sets[i] == sets[j] {
                out.push((labels[i], labels[j]));
            }
        }
    }
    Ok(out)
}
