use std::collections::HashSet;

use crate::permgroup::{all_subgroups, core, count_fixed_cosets, Permutation, PermutationGroup};

use super::ClassifierError;

/// The triple `(G, H, c)` describing a totally imaginary field through its Galois closure.
#[derive(Clone, Debug)]
pub struct GroupConfiguration {
    group: PermutationGroup,
    stabilizer: PermutationGroup,
    conjugation: Permutation,
}

impl GroupConfiguration {
    /// Checks that `H ⊆ G` has trivial core and even index, and that `c` is an
    /// involution of `G` fixing no coset of `G/H`.
    pub fn new(
        group: PermutationGroup,
        stabilizer: PermutationGroup,
        conjugation: Permutation,
    ) -> Result<Self, ClassifierError> {
        if !stabilizer.is_subgroup_of(&group) {
            return Err(ClassifierError::InvalidConfiguration("H is not a subgroup of G".into()));
        }
        let index = stabilizer.index_in(&group);
        if index < 2 || index % 2 == 1 {
            return Err(ClassifierError::InvalidConfiguration(format!(
                "[G:H] = {index}; a totally imaginary field has even degree"
            )));
        }
        if !core(&group, &stabilizer)?.is_trivial() {
            return Err(ClassifierError::InvalidConfiguration(
                "core(G, H) is not trivial, so G is not the Galois group of the closure".into(),
            ));
        }
        if !group.contains(&conjugation) {
            return Err(ClassifierError::InvalidConfiguration(format!("c = {conjugation} is not in G")));
        }
        if conjugation.order() != 2 {
            return Err(ClassifierError::NotAnInvolution(conjugation.order()));
        }
        let fixed = count_fixed_cosets(&group, &stabilizer, &conjugation);
        if fixed != 0 {
            return Err(ClassifierError::InvalidConfiguration(format!(
                "c = {conjugation} fixes {fixed} cosets of G/H, so F has real embeddings"
            )));
        }
        Ok(GroupConfiguration { group, stabilizer, conjugation })
    }

    /// `G` acting on points with `H` the stabiliser of point 0.
    pub fn from_transitive(group: PermutationGroup, conjugation: Permutation) -> Result<Self, ClassifierError> {
        if !group.is_transitive() {
            return Err(ClassifierError::InvalidConfiguration("G is not transitive".into()));
        }
        let stabilizer = group.stabilizer(0);
        GroupConfiguration::new(group, stabilizer, conjugation)
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn stabilizer(&self) -> &PermutationGroup {
        &self.stabilizer
    }

    pub fn conjugation(&self) -> &Permutation {
        &self.conjugation
    }

    /// `[F:Q] = [G:H]`.
    pub fn degree(&self) -> usize {
        self.stabilizer.index_in(&self.group)
    }
}

/// Every valid configuration on `g` of the given field degree, one per conjugacy class
/// of `H` and, for each `H`, one `c` per orbit of `N_G(H)` acting by conjugation.
pub fn valid_configurations(g: &PermutationGroup, degree: usize) -> Result<Vec<GroupConfiguration>, ClassifierError> {
    let list = all_subgroups(g)?;
    let involutions = g.involutions();
    let mut out = Vec::new();
    for h in list.representatives() {
        if h.index_in(g) != degree || !core(g, h)?.is_trivial() {
            continue;
        }
        let normalizer = h.normalizer_in(g);
        let mut seen: HashSet<Permutation> = HashSet::new();
        for c in &involutions {
            if seen.contains(c) || count_fixed_cosets(g, h, c) != 0 {
                continue;
            }
            for x in normalizer.elements() {
                seen.insert(c.conjugate_by(x));
            }
            out.push(GroupConfiguration::new(g.clone(), h.clone(), c.clone())?);
        }
    }
    Ok(out)
}
