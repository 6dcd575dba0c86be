use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::group::PermutationGroup;
use super::perm::Permutation;
use super::PermError;

/// Largest group order the subgroup machinery accepts (|S6|).
pub const MAX_GROUP_ORDER: usize = 720;

/// Multiplication table over the sorted element list of a group.
pub(crate) struct GroupTable {
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    order_of: Vec<u32>,
}

impl GroupTable {
    pub(crate) fn new(g: &PermutationGroup) -> Self {
        let elems = g.elements();
        let n = elems.len();
        let mut mul = vec![0u16; n * n];
        let mut inv = vec![0u16; n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let k = g.position(&a.compose(b)).expect("closed");
                mul[i * n + j] = k as u16;
            }
            inv[i] = g.position(&a.inverse()).expect("closed") as u16;
        }
        let order_of = elems.iter().map(|e| e.order() as u32).collect();
        GroupTable { n, mul, inv, order_of }
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    fn conj(&self, x: usize, k: usize) -> usize {
        self.mul(self.mul(x, k), self.inv[x] as usize)
    }

    fn identity(&self) -> usize {
        (0..self.n).find(|&i| self.order_of[i] == 1).expect("identity present")
    }

    /// Subgroup generated by an already closed set plus extra generators.
    fn close(&self, base: &FixedBitSet, gens: &[usize]) -> FixedBitSet {
        let mut set = base.clone();
        let mut list: Vec<usize> = set.ones().collect();
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in gens {
                let y = self.mul(g, x);
                if !set.contains(y) {
                    set.insert(y);
                    list.push(y);
                }
            }
            i += 1;
        }
        set
    }
}

#[derive(Clone)]
struct Sub {
    set: FixedBitSet,
    gens: Vec<usize>,
}

/// Every subgroup of a group, grouped into conjugacy classes.
#[derive(Clone, Debug)]
pub struct SubgroupList {
    /// Sorted by increasing order, then by class.
    pub subgroups: Vec<PermutationGroup>,
    /// Conjugacy class id of each subgroup; ids are dense and ordered like `subgroups`.
    pub class_of: Vec<usize>,
}

impl SubgroupList {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.class_of.iter().max().map_or(0, |m| m + 1)
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.class_count()];
        for (i, &c) in self.class_of.iter().enumerate() {
            out[c].push(i);
        }
        out
    }

    /// One subgroup per conjugacy class.
    pub fn representatives(&self) -> Vec<&PermutationGroup> {
        self.classes().iter().map(|members| &self.subgroups[members[0]]).collect()
    }

    pub fn position(&self, k: &PermutationGroup) -> Option<usize> {
        self.subgroups.iter().position(|s| s.elements() == k.elements())
    }
}

/// All subgroups by cyclic extension: class representatives are joined with every
/// cyclic subgroup of prime-power order, and each new subgroup brings its whole
/// conjugacy class. Every subgroup is a chain of such joins from `{1}`.
pub fn all_subgroups(g: &PermutationGroup) -> Result<SubgroupList, PermError> {
    if g.order() > MAX_GROUP_ORDER {
        return Err(PermError::GroupTooLarge { order: g.order(), max: MAX_GROUP_ORDER });
    }
    let table = GroupTable::new(g);
    let n = table.n;

    let mut zuppos: Vec<Sub> = Vec::new();
    let mut zuppo_seen: HashMap<FixedBitSet, ()> = HashMap::new();
    for x in 0..n {
        let o = table.order_of[x];
        if o > 1 && is_prime_power(o) {
            let mut trivial = FixedBitSet::with_capacity(n);
            trivial.insert(table.identity());
            let set = table.close(&trivial, &[x]);
            if zuppo_seen.insert(set.clone(), ()).is_none() {
                zuppos.push(Sub { set, gens: vec![x] });
            }
        }
    }

    let mut classes: Vec<Vec<Sub>> = Vec::new();
    let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut trivial = FixedBitSet::with_capacity(n);
    trivial.insert(table.identity());
    add_class(&table, Sub { set: trivial, gens: Vec::new() }, &mut classes, &mut seen);

    let mut next = 0;
    while next < classes.len() {
        let rep = classes[next][0].clone();
        for z in &zuppos {
            if z.set.is_subset(&rep.set) {
                continue;
            }
            let set = table.close(&rep.set, &[rep.gens.as_slice(), z.gens.as_slice()].concat());
            if seen.contains_key(&set) {
                continue;
            }
            let mut gens = rep.gens.clone();
            gens.extend(&z.gens);
            add_class(&table, Sub { set, gens }, &mut classes, &mut seen);
        }
        next += 1;
    }

    let elems = g.elements();
    let mut flat: Vec<(usize, Sub)> = Vec::new();
    for (cid, members) in classes.into_iter().enumerate() {
        for m in members {
            flat.push((cid, m));
        }
    }
    flat.sort_by_key(|(cid, s)| (s.set.count_ones(..), *cid));
    // Renumber classes in order of first appearance.
    let mut renumber: HashMap<usize, usize> = HashMap::new();
    let mut subgroups = Vec::with_capacity(flat.len());
    let mut class_of = Vec::with_capacity(flat.len());
    for (cid, s) in flat {
        let next_id = renumber.len();
        let id = *renumber.entry(cid).or_insert(next_id);
        let members: Vec<Permutation> = s.set.ones().map(|i| elems[i].clone()).collect();
        let gens: Vec<Permutation> = s.gens.iter().map(|&i| elems[i].clone()).collect();
        subgroups.push(PermutationGroup::from_sorted_elements(g.degree(), members, gens));
        class_of.push(id);
    }
    Ok(SubgroupList { subgroups, class_of })
}

fn add_class(table: &GroupTable, sub: Sub, classes: &mut Vec<Vec<Sub>>, seen: &mut HashMap<FixedBitSet, usize>) {
    let cid = classes.len();
    let mut members: Vec<Sub> = Vec::new();
    for x in 0..table.n {
        let mut set = FixedBitSet::with_capacity(table.n);
        for k in sub.set.ones() {
            set.insert(table.conj(x, k));
        }
        if seen.contains_key(&set) {
            continue;
        }
        seen.insert(set.clone(), cid);
        let gens = sub.gens.iter().map(|&k| table.conj(x, k)).collect();
        members.push(Sub { set, gens });
    }
    classes.push(members);
}

fn is_prime_power(mut n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while !n.is_multiple_of(p) {
        p += 1;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// Subgroups of `g` as nodes, covering relations `(lower, upper)` as edges.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    pub nodes: Vec<PermutationGroup>,
    pub class_of: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct NodeJson {
    id: usize,
    order: usize,
    class: usize,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct LatticeJson {
    nodes: Vec<NodeJson>,
    edges: Vec<[usize; 2]>,
}

impl SubgroupLattice {
    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn position(&self, k: &PermutationGroup) -> Option<usize> {
        self.nodes.iter().position(|s| s.elements() == k.elements())
    }

    pub fn has_edge(&self, lower: &PermutationGroup, upper: &PermutationGroup) -> bool {
        match (self.position(lower), self.position(upper)) {
            (Some(a), Some(b)) => self.edges.contains(&(a, b)),
            _ => false,
        }
    }

    /// Nodes covered by `node` (its maximal subgroups).
    pub fn below(&self, node: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.1 == node).map(|e| e.0).collect()
    }

    /// Nodes covering `node`.
    pub fn above(&self, node: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.0 == node).map(|e| e.1).collect()
    }

    pub fn maximal_subgroups(&self) -> Vec<&PermutationGroup> {
        self.below(self.top()).into_iter().map(|i| &self.nodes[i]).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = LatticeJson {
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, k)| NodeJson {
                    id,
                    order: k.order(),
                    class: self.class_of[id],
                    generators: k.generators().iter().map(|g| g.to_string()).collect(),
                })
                .collect(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        };
        serde_json::to_value(doc).expect("serialisable")
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{name}\" {{");
        let _ = writeln!(out, "  rankdir=BT;");
        for (id, k) in self.nodes.iter().enumerate() {
            let gens: Vec<String> = k.generators().iter().map(|g| g.to_string()).collect();
            let _ = writeln!(out, "  n{id} [label=\"|K|={} <{}>\"];", k.order(), gens.join(", "));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -- n{b};");
        }
        out.push_str("}\n");
        out
    }
}

pub fn subgroup_lattice(g: &PermutationGroup) -> Result<SubgroupLattice, PermError> {
    let list = all_subgroups(g)?;
    let table_n = g.order();
    let sets: Vec<FixedBitSet> = list
        .subgroups
        .iter()
        .map(|k| {
            let mut s = FixedBitSet::with_capacity(table_n);
            for e in k.elements() {
                s.insert(g.position(e).expect("subgroup"));
            }
            s
        })
        .collect();
    let mut edges = Vec::new();
    for upper in 0..sets.len() {
        // Maximal elements among proper subgroups of `upper`, scanned largest first.
        let mut maximal: Vec<usize> = Vec::new();
        for lower in (0..upper).rev() {
            let lo = &sets[lower];
            if lo.count_ones(..) == sets[upper].count_ones(..) || !lo.is_subset(&sets[upper]) {
                continue;
            }
            if maximal.iter().all(|&m| !lo.is_subset(&sets[m])) {
                maximal.push(lower);
            }
        }
        for m in maximal {
            edges.push((m, upper));
        }
    }
    edges.sort_unstable();
    Ok(SubgroupLattice { nodes: list.subgroups, class_of: list.class_of, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::generate;

    fn gen(n: usize, gens: &[&str]) -> PermutationGroup {
        let gens: Vec<Permutation> = gens.iter().map(|s| Permutation::parse_cycles(n, s).unwrap()).collect();
        generate(&gens, n).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroups(&gen(4, &["(0 1 2 3)", "(0 2)"])).unwrap().len(), 10);
        assert_eq!(all_subgroups(&gen(6, &["(0 1 2 3 4 5)"])).unwrap().len(), 4);
        assert_eq!(all_subgroups(&PermutationGroup::symmetric(4)).unwrap().len(), 30);
        assert_eq!(all_subgroups(&PermutationGroup::symmetric(4)).unwrap().class_count(), 11);
    }

    #[test]
    fn too_large_is_rejected() {
        let s7 = PermutationGroup::symmetric(7);
        assert!(matches!(all_subgroups(&s7), Err(PermError::GroupTooLarge { .. })));
    }

    #[test]
    fn trivial_lattice() {
        let l = subgroup_lattice(&PermutationGroup::trivial(3)).unwrap();
        assert_eq!(l.nodes.len(), 1);
        assert!(l.edges.is_empty());
    }

    #[test]
    fn dot_output_lists_every_edge() {
        let l = subgroup_lattice(&gen(4, &["(0 1 2 3)", "(0 2)"])).unwrap();
        let dot = l.to_dot("D4");
        assert_eq!(dot.matches(" -- ").count(), l.edges.len());
    }

    #[test]
    fn prime_powers() {
        assert!(is_prime_power(8));
        assert!(is_prime_power(5));
        assert!(!is_prime_power(6));
        assert!(!is_prime_power(1));
    }
}
