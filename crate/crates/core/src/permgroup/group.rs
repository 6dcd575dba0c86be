use std::collections::{BTreeMap, HashSet, VecDeque};

use super::perm::{CycleType, Permutation};
use super::PermError;

/// A finite permutation group stored as its full, sorted element list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl std::fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermutationGroup(order {}, degree {}, gens [", self.order(), self.degree)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

/// Serialises as its degree, order and generators in cycle notation.
impl serde::Serialize for PermutationGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let mut st = s.serialize_struct("PermutationGroup", 3)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("generators", &gens)?;
        st.end()
    }
}

/// Closure of `gens` under composition.
pub fn generate(gens: &[Permutation], degree: usize) -> Result<PermutationGroup, PermError> {
    if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
        return Err(PermError::DegreeMismatch { expected: degree, found: bad.degree() });
    }
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    let live: Vec<&Permutation> = gens.iter().filter(|g| !g.is_identity()).collect();
    while let Some(x) = queue.pop_front() {
        for g in &live {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort_unstable();
    Ok(PermutationGroup { degree, elements, generators: gens.to_vec() })
}

impl PermutationGroup {
    /// Wraps an element list already known to be a group.
    pub(crate) fn from_sorted_elements(
        degree: usize,
        elements: Vec<Permutation>,
        generators: Vec<Permutation>,
    ) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        PermutationGroup { degree, elements, generators }
    }

    /// Checks closure and builds a group from an arbitrary element list.
    pub fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Result<Self, PermError> {
        if let Some(bad) = elements.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch { expected: degree, found: bad.degree() });
        }
        elements.sort_unstable();
        elements.dedup();
        let group = PermutationGroup { degree, elements, generators: Vec::new() };
        if !group.contains(&Permutation::identity(degree)) {
            return Err(PermError::NotAGroup("missing identity".into()));
        }
        for a in &group.elements {
            for b in &group.elements {
                if !group.contains(&a.compose(b)) {
                    return Err(PermError::NotAGroup(format!("not closed: {a} * {b}")));
                }
            }
        }
        let generators = group.small_generating_set();
        Ok(PermutationGroup { generators, ..group })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup { degree, elements: vec![Permutation::identity(degree)], generators: Vec::new() }
    }

    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree > 1 {
            let cycle: Vec<usize> = (0..degree).collect();
            gens.push(Permutation::from_cycles(degree, &[&cycle]).expect("valid cycle"));
            gens.push(Permutation::from_cycles(degree, &[&[0, 1]]).expect("valid cycle"));
        }
        generate(&gens, degree).expect("consistent degrees")
    }

    pub fn alternating(degree: usize) -> Self {
        let gens: Vec<Permutation> = (0..degree.saturating_sub(2))
            .map(|i| Permutation::from_cycles(degree, &[&[i, i + 1, i + 2]]).expect("valid cycle"))
            .collect();
        generate(&gens, degree).expect("consistent degrees")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.elements.binary_search(p).is_ok()
    }

    pub fn position(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree
            && other.order().is_multiple_of(self.order())
            && self.elements.iter().all(|e| other.contains(e))
    }

    pub fn index_in(&self, over: &PermutationGroup) -> usize {
        over.order() / self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut out = vec![point];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for g in &self.generators {
                let y = g.image(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit(0).len() == self.degree
    }

    pub fn stabilizer(&self, point: usize) -> PermutationGroup {
        let elements: Vec<Permutation> = self.elements.iter().filter(|g| g.image(point) == point).cloned().collect();
        self.subgroup_from_sorted(elements)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn center(&self) -> PermutationGroup {
        let elements: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|z| self.generators.iter().all(|g| g.compose(z) == z.compose(g)))
            .cloned()
            .collect();
        self.subgroup_from_sorted(elements)
    }

    /// `g * self * g^-1`.
    pub fn conjugate(&self, g: &Permutation) -> PermutationGroup {
        let mut elements: Vec<Permutation> = self.elements.iter().map(|x| x.conjugate_by(g)).collect();
        elements.sort_unstable();
        let generators = self.generators.iter().map(|x| x.conjugate_by(g)).collect();
        PermutationGroup { degree: self.degree, elements, generators }
    }

    /// Normal in `over`, assuming `self` is a subgroup of it.
    pub fn is_normal_in(&self, over: &PermutationGroup) -> bool {
        over.generators.iter().all(|g| self.generators.iter().all(|h| self.contains(&h.conjugate_by(g))))
    }

    pub fn normalizer_in(&self, over: &PermutationGroup) -> PermutationGroup {
        let elements: Vec<Permutation> = over
            .elements
            .iter()
            .filter(|g| self.generators.iter().all(|h| self.contains(&h.conjugate_by(g))))
            .cloned()
            .collect();
        over.subgroup_from_sorted(elements)
    }

    pub fn intersection(&self, other: &PermutationGroup) -> PermutationGroup {
        let elements: Vec<Permutation> = self.elements.iter().filter(|e| other.contains(e)).cloned().collect();
        self.subgroup_from_sorted(elements)
    }

    pub fn join(&self, other: &PermutationGroup) -> PermutationGroup {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        generate(&gens, self.degree).expect("same degree")
    }

    /// Elements of order exactly two.
    pub fn involutions(&self) -> Vec<Permutation> {
        self.elements.iter().filter(|g| g.order() == 2).cloned().collect()
    }

    pub fn contains_odd(&self) -> bool {
        self.generators.iter().any(|g| !g.is_even())
    }

    pub fn cycle_type_counts(&self) -> BTreeMap<CycleType, usize> {
        let mut counts = BTreeMap::new();
        for g in &self.elements {
            *counts.entry(g.cycle_type()).or_insert(0) += 1;
        }
        counts
    }

    pub(crate) fn subgroup_from_sorted(&self, elements: Vec<Permutation>) -> PermutationGroup {
        let group = PermutationGroup { degree: self.degree, elements, generators: Vec::new() };
        let generators = group.small_generating_set();
        PermutationGroup { generators, ..group }
    }

    /// Greedy generating set: add elements (largest order first) until the span is everything.
    pub(crate) fn small_generating_set(&self) -> Vec<Permutation> {
        let mut candidates: Vec<&Permutation> = self.elements.iter().filter(|g| !g.is_identity()).collect();
        candidates.sort_by_key(|g| std::cmp::Reverse(g.order()));
        let mut gens: Vec<Permutation> = Vec::new();
        let mut span = PermutationGroup::trivial(self.degree);
        for c in candidates {
            if span.order() == self.order() {
                break;
            }
            if !span.contains(c) {
                gens.push(c.clone());
                span = generate(&gens, self.degree).expect("same degree");
            }
        }
        gens
    }
}

fn ensure_subgroup(k: &PermutationGroup, g: &PermutationGroup) -> Result<(), PermError> {
    if k.is_subgroup_of(g) {
        Ok(())
    } else {
        Err(PermError::NotASubgroup)
    }
}

/// Intersection of all conjugates of `k` in `g`: the largest normal subgroup of `g` inside `k`.
pub fn core(g: &PermutationGroup, k: &PermutationGroup) -> Result<PermutationGroup, PermError> {
    ensure_subgroup(k, g)?;
    // x lies in every conjugate of k iff its whole conjugacy class lies in k.
    let mut keep: Vec<Permutation> = Vec::new();
    let mut rejected: HashSet<Permutation> = HashSet::new();
    'outer: for x in k.elements() {
        if rejected.contains(x) {
            continue;
        }
        let mut class: HashSet<Permutation> = HashSet::from([x.clone()]);
        let mut stack = vec![x.clone()];
        while let Some(y) = stack.pop() {
            for s in g.generators() {
                let z = y.conjugate_by(s);
                if !k.contains(&z) {
                    rejected.extend(class);
                    continue 'outer;
                }
                if class.insert(z.clone()) {
                    stack.push(z);
                }
            }
        }
        keep.push(x.clone());
    }
    keep.sort_unstable();
    Ok(g.subgroup_from_sorted(keep))
}

/// A left coset `rK`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coset {
    pub representative: Permutation,
    pub elements: Vec<Permutation>,
}

/// Left cosets of `k` in `g`; the first coset is `k` itself.
pub fn left_cosets(g: &PermutationGroup, k: &PermutationGroup) -> Result<Vec<Coset>, PermError> {
    ensure_subgroup(k, g)?;
    let mut assigned = vec![false; g.order()];
    let mut out = Vec::with_capacity(g.order() / k.order());
    for (i, r) in g.elements().iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut elements: Vec<Permutation> = k.elements().iter().map(|x| r.compose(x)).collect();
        elements.sort_unstable();
        for e in &elements {
            let j = g.position(e).expect("coset inside group");
            assigned[j] = true;
        }
        out.push(Coset { representative: r.clone(), elements });
    }
    Ok(out)
}

/// Cosets `xK` with `c x K = x K`, i.e. `x^-1 c x ∈ K`.
pub fn fixed_cosets(g: &PermutationGroup, k: &PermutationGroup, c: &Permutation) -> Result<Vec<Coset>, PermError> {
    if !g.contains(c) {
        return Err(PermError::NotAnElement(c.to_string()));
    }
    Ok(left_cosets(g, k)?
        .into_iter()
        .filter(|coset| k.contains(&c.conjugate_by(&coset.representative.inverse())))
        .collect())
}

/// Number of cosets of `k` fixed by `c`, without materialising the cosets.
pub fn count_fixed_cosets(g: &PermutationGroup, k: &PermutationGroup, c: &Permutation) -> usize {
    // |{xK : x^-1 c x ∈ K}| = |{x ∈ G : x^-1 c x ∈ K}| / |K|
    let hits = g.elements().iter().filter(|x| k.contains(&c.conjugate_by(&x.inverse()))).count();
    hits / k.order()
}

/// The permutation action of `g` on its left cosets of `k`.
#[derive(Clone, Debug)]
pub struct CosetAction {
    pub cosets: Vec<Coset>,
    pub image: PermutationGroup,
}

impl CosetAction {
    /// Which coset contains `x`.
    pub fn coset_of(&self, x: &Permutation) -> Option<usize> {
        self.cosets.iter().position(|c| c.elements.binary_search(x).is_ok())
    }

    /// Image of `x` as a permutation of the cosets.
    pub fn act(&self, x: &Permutation) -> Permutation {
        let images: Vec<usize> =
            self.cosets.iter().map(|c| self.coset_of(&x.compose(&c.representative)).expect("x in group")).collect();
        Permutation::new(images).expect("left multiplication permutes cosets")
    }
}

pub fn coset_action(g: &PermutationGroup, k: &PermutationGroup) -> Result<CosetAction, PermError> {
    let cosets = left_cosets(g, k)?;
    let mut action = CosetAction { cosets, image: PermutationGroup::trivial(1) };
    let n = action.cosets.len();
    let gens: Vec<Permutation> = g.generators().iter().map(|x| action.act(x)).collect();
    action.image = generate(&gens, n)?;
    Ok(action)
}

/// A subgroup `K` with `H ⊆ K ⊆ G`.
#[derive(Clone, Debug)]
pub struct Intermediate {
    pub group: PermutationGroup,
    /// `[G:K]`
    pub index: usize,
    /// `H ⊊ K ⊊ G`
    pub proper: bool,
}

/// All subgroups between `h` and `g`, sorted by increasing order; includes both ends.
pub fn intermediate_subgroups(g: &PermutationGroup, h: &PermutationGroup) -> Result<Vec<Intermediate>, PermError> {
    ensure_subgroup(h, g)?;
    let mut found: Vec<PermutationGroup> = vec![h.clone()];
    let mut seen: HashSet<Vec<Permutation>> = HashSet::from([h.elements().to_vec()]);
    let mut i = 0;
    while i < found.len() {
        let k = found[i].clone();
        if k.order() < g.order() {
            // <K, x> only depends on the left coset xK.
            for coset in left_cosets(g, &k)?.iter().skip(1) {
                let mut gens = k.generators().to_vec();
                gens.push(coset.representative.clone());
                let joined = generate(&gens, g.degree())?;
                if seen.insert(joined.elements().to_vec()) {
                    found.push(joined);
                }
            }
        }
        i += 1;
    }
    found.sort_by_key(|k| k.order());
    Ok(found
        .into_iter()
        .map(|k| {
            let index = g.order() / k.order();
            let proper = k.order() != h.order() && k.order() != g.order();
            Intermediate { group: k, index, proper }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn gen(n: usize, gens: &[&str]) -> PermutationGroup {
        let gens: Vec<Permutation> = gens.iter().map(|s| p(n, s)).collect();
        generate(&gens, n).unwrap()
    }

    #[test]
    fn cyclic_six() {
        let g = gen(6, &["(0 1 2 3 4 5)"]);
        assert_eq!(g.order(), 6);
        assert!(g.is_transitive());
        assert!(g.is_abelian());
    }

    #[test]
    fn four_cycle_and_transposition_give_s4() {
        let g = gen(4, &["(0 1 2 3)", "(0 1)"]);
        assert_eq!(g.order(), 24);
        assert_eq!(g, PermutationGroup::symmetric(4));
    }

    #[test]
    fn wreath_presentation_has_order_72() {
        // letters 1,2,3,a,b,c -> 0..5
        let g = gen(6, &["(0 1 2)", "(3 4 5)", "(0 3 1 4)(2 5)", "(3 4)"]);
        assert_eq!(g.order(), 72);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let err = generate(&[p(4, "(0 1)"), p(5, "(0 1)")], 4).unwrap_err();
        assert!(matches!(err, PermError::DegreeMismatch { .. }));
    }

    #[test]
    fn core_of_dihedral_in_s4_is_normal_klein() {
        let s4 = PermutationGroup::symmetric(4);
        let d4 = gen(4, &["(0 1 2 3)", "(0 2)"]);
        let v4n = gen(4, &["(0 1)(2 3)", "(0 2)(1 3)"]);
        assert_eq!(core(&s4, &d4).unwrap().elements(), v4n.elements());
        assert_eq!(core(&s4, &s4).unwrap(), s4.subgroup_from_sorted(s4.elements().to_vec()));
        assert!(core(&d4, &s4).is_err());
    }

    #[test]
    fn fixed_cosets_of_c4_under_double_transposition() {
        let s4 = PermutationGroup::symmetric(4);
        let c4 = gen(4, &["(0 1 2 3)"]);
        let c = p(4, "(0 1)(2 3)");
        let fixed = fixed_cosets(&s4, &c4, &c).unwrap();
        assert!(fixed.iter().any(|coset| coset.elements.contains(&p(4, "(0 3)"))));
        assert_eq!(fixed.len(), count_fixed_cosets(&s4, &c4, &c));
        let all = fixed_cosets(&s4, &c4, &Permutation::identity(4)).unwrap();
        assert_eq!(all.len(), 6);
        assert!(fixed_cosets(&c4, &c4, &p(4, "(0 1)")).is_err());
    }

    #[test]
    fn coset_action_is_transitive_of_index_degree() {
        let s4 = PermutationGroup::symmetric(4);
        let c4 = gen(4, &["(0 1 2 3)"]);
        let act = coset_action(&s4, &c4).unwrap();
        assert_eq!(act.image.degree(), 6);
        assert_eq!(act.image.order(), 24);
        assert!(act.image.is_transitive());
        // Transpositions act without fixed points on S4/C4.
        assert_eq!(act.act(&p(4, "(0 1)")).cycle_type().parts(), &[2, 2, 2]);
    }

    #[test]
    fn intermediate_subgroups_of_trivial_tower() {
        let s4 = PermutationGroup::symmetric(4);
        let ks = intermediate_subgroups(&s4, &s4).unwrap();
        assert_eq!(ks.len(), 1);
        assert!(!ks[0].proper);
        let c4 = gen(4, &["(0 1 2 3)"]);
        let ks = intermediate_subgroups(&s4, &c4).unwrap();
        // C4 < D4 < S4 only.
        assert_eq!(ks.iter().map(|k| k.group.order()).collect::<Vec<_>>(), vec![4, 8, 24]);
        assert_eq!(ks.iter().filter(|k| k.proper).count(), 1);
    }

    #[test]
    fn from_elements_rejects_non_groups() {
        assert!(PermutationGroup::from_elements(3, vec![Permutation::identity(3), p(3, "(0 1 2)")]).is_err());
        let g = PermutationGroup::from_elements(3, vec![Permutation::identity(3), p(3, "(0 1 2)"), p(3, "(0 2 1)")])
            .unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.generators().len(), 1);
    }

    #[test]
    fn center_and_normalizer() {
        let d6 = gen(6, &["(0 1 2 3 4 5)", "(1 5)(2 4)"]);
        let z = d6.center();
        assert_eq!(z.order(), 2);
        assert!(z.contains(&p(6, "(0 3)(1 4)(2 5)")));
        let s = gen(6, &["(1 5)(2 4)"]);
        assert_eq!(s.normalizer_in(&d6).order(), 4);
    }
}
