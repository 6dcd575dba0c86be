use cmfield::permgroup::*;
use proptest::prelude::*;

fn p(n: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(n, s).unwrap()
}

fn gen(n: usize, gens: &[&str]) -> PermutationGroup {
    let gens: Vec<Permutation> = gens.iter().map(|s| p(n, s)).collect();
    generate(&gens, n).unwrap()
}

fn label(s: &str) -> TransitiveLabel {
    s.parse().unwrap()
}

// D4 on the square 0-1-2-3 with r = (0 1 2 3), s = (1 3).
fn d4() -> (PermutationGroup, Permutation, Permutation) {
    (gen(4, &["(0 1 2 3)", "(1 3)"]), p(4, "(0 1 2 3)"), p(4, "(1 3)"))
}

// D6 on the hexagon with r = (0 1 2 3 4 5), s = (1 5)(2 4).
fn d6() -> (PermutationGroup, Permutation, Permutation) {
    (gen(6, &["(0 1 2 3 4 5)", "(1 5)(2 4)"]), p(6, "(0 1 2 3 4 5)"), p(6, "(1 5)(2 4)"))
}

fn words(g: &PermutationGroup, gens: &[Permutation]) -> PermutationGroup {
    generate(gens, g.degree()).unwrap()
}

#[test]
fn closure_examples() {
    let c6 = gen(6, &["(0 1 2 3 4 5)"]);
    assert_eq!(c6.order(), 6);
    assert!(c6.is_transitive());
    assert_eq!(gen(4, &["(0 1 2 3)", "(0 1)"]).order(), 24);
    assert_eq!(gen(6, &["(0 1 2)", "(3 4 5)", "(0 3 1 4)(2 5)", "(3 4)"]).order(), 72);
}

#[test]
fn subgroup_counts_match_figures() {
    assert_eq!(all_subgroups(&d4().0).unwrap().len(), 10);
    assert_eq!(all_subgroups(&gen(6, &["(0 1 2 3 4 5)"])).unwrap().len(), 4);
    assert_eq!(all_subgroups(&PermutationGroup::symmetric(4)).unwrap().len(), 30);
    assert_eq!(subgroup_lattice(&d6().0).unwrap().nodes.len(), 16);
}

#[test]
fn d4_lattice_matches_figure_one() {
    let (g, r, s) = d4();
    let l = subgroup_lattice(&g).unwrap();
    let r2 = r.pow(2);
    let r3s = &r.pow(3) * &s;
    let rs = &r * &s;
    let r2s = &r2 * &s;
    let one = PermutationGroup::trivial(4);
    let c4 = words(&g, std::slice::from_ref(&r));
    let v_a = words(&g, &[r2.clone(), s.clone()]);
    let v_b = words(&g, &[r3s.clone(), r2.clone()]);
    let c = |x: &Permutation| words(&g, std::slice::from_ref(x));
    let figure = [
        (&v_b, &g),
        (&c4, &g),
        (&v_a, &g),
        (&c(&r2s), &v_a),
        (&c(&s), &v_a),
        (&c(&r2), &v_a),
        (&c(&r2), &c4),
        (&c(&r2), &v_b),
        (&c(&r3s), &v_b),
        (&c(&rs), &v_b),
        (&one, &c(&rs)),
        (&one, &c(&r3s)),
        (&one, &c(&s)),
        (&one, &c(&r2s)),
        (&one, &c(&r2)),
    ];
    for (lo, hi) in figure {
        assert!(l.has_edge(lo, hi), "missing {lo:?} < {hi:?}");
    }
    assert_eq!(l.edges.len(), figure.len());
}

#[test]
fn d6_lattice_matches_figure_two() {
    let (g, r, s) = d6();
    let l = subgroup_lattice(&g).unwrap();
    let rp = |k: u64| r.pow(k);
    let sr = |k: u64| &s * &r.pow(k);
    let w = |xs: &[Permutation]| words(&g, xs);
    let one = PermutationGroup::trivial(6);
    let o61 = w(&[rp(2), sr(1)]);
    let o62 = w(&[rp(2), s.clone()]);
    let o63 = w(std::slice::from_ref(&r));
    let o41 = w(&[rp(3), s.clone()]);
    let o42 = w(&[rp(3), sr(2)]);
    let o43 = w(&[rp(3), sr(1)]);
    let o3 = w(&[rp(2)]);
    let o2 = w(&[rp(3)]);
    let inv = |k: u64| w(&[sr(k)]);
    let figure = vec![
        (o61.clone(), g.clone()),
        (o62.clone(), g.clone()),
        (o63.clone(), g.clone()),
        (o41.clone(), g.clone()),
        (o42.clone(), g.clone()),
        (o43.clone(), g.clone()),
        (inv(5), o61.clone()),
        (inv(3), o61.clone()),
        (inv(1), o61.clone()),
        (o3.clone(), o61.clone()),
        (inv(2), o62.clone()),
        (inv(4), o62.clone()),
        (inv(0), o62.clone()),
        (o3.clone(), o62.clone()),
        (o3.clone(), o63.clone()),
        (o2.clone(), o63.clone()),
        (o2.clone(), o41.clone()),
        (inv(3), o41.clone()),
        (inv(0), o41.clone()),
        (o2.clone(), o42.clone()),
        (inv(2), o42.clone()),
        (inv(5), o42.clone()),
        (o2.clone(), o43.clone()),
        (inv(4), o43.clone()),
        (inv(1), o43.clone()),
        (one.clone(), o2.clone()),
        (one.clone(), inv(0)),
        (one.clone(), inv(1)),
        (one.clone(), inv(2)),
        (one.clone(), inv(3)),
        (one.clone(), inv(4)),
        (one.clone(), inv(5)),
        (one.clone(), o3.clone()),
    ];
    for (lo, hi) in &figure {
        assert!(l.has_edge(lo, hi), "missing {lo:?} < {hi:?}");
    }
    assert_eq!(l.edges.len(), figure.len());
}

#[test]
fn s4_lattice_spot_checks_figure_three() {
    let s4 = PermutationGroup::symmetric(4);
    let l = subgroup_lattice(&s4).unwrap();
    assert_eq!(l.nodes.len(), 30);
    assert_eq!(l.class_of.iter().max().unwrap() + 1, 11);
    let v4n = gen(4, &["(0 1)(2 3)", "(0 2)(1 3)"]);
    let a4 = PermutationGroup::alternating(4);
    // D4^j is the centraliser of the double transposition C2^{j1}.
    let doubles = ["(0 2)(1 3)", "(0 1)(2 3)", "(0 3)(1 2)"];
    for d in doubles {
        let z = p(4, d);
        let d4j = PermutationGroup::from_elements(
            4,
            s4.elements().iter().filter(|x| x.compose(&z) == z.compose(x)).cloned().collect(),
        )
        .unwrap();
        assert_eq!(d4j.order(), 8);
        assert!(l.has_edge(&v4n, &d4j));
        assert!(l.has_edge(&d4j, &s4));
        assert!(l.has_edge(&gen(4, &[d]), &v4n));
    }
    assert!(l.has_edge(&a4, &s4));
    for c3 in ["(0 1 2)", "(0 1 3)", "(0 2 3)", "(1 2 3)"] {
        assert!(l.has_edge(&gen(4, &[c3]), &a4));
        assert!(l.has_edge(&PermutationGroup::trivial(4), &gen(4, &[c3])));
    }
    // Maximal subgroups of S4: A4, three D4, four S3.
    let mut orders: Vec<usize> = l.maximal_subgroups().iter().map(|k| k.order()).collect();
    orders.sort_unstable();
    assert_eq!(orders, vec![6, 6, 6, 6, 8, 8, 8, 12]);
}

#[test]
fn lattice_edges_are_covering_relations() {
    for g in [d4().0, d6().0, PermutationGroup::symmetric(4)] {
        let l = subgroup_lattice(&g).unwrap();
        assert_eq!(l.nodes[l.top()].order(), g.order());
        assert!(l.nodes[l.bottom()].is_trivial());
        for &(a, b) in &l.edges {
            let (lo, hi) = (&l.nodes[a], &l.nodes[b]);
            assert!(lo.is_subgroup_of(hi) && lo.order() < hi.order());
            let between = l.nodes.iter().filter(|k| lo.is_subgroup_of(k) && k.is_subgroup_of(hi)).count();
            assert_eq!(between, 2, "{lo:?} < {hi:?} is not a cover");
        }
        let json = l.to_json();
        assert_eq!(json["nodes"].as_array().unwrap().len(), l.nodes.len());
        assert!(l.to_dot("g").starts_with("graph"));
    }
}

#[test]
fn subgroup_list_is_closed_under_joins() {
    for g in [d6().0, PermutationGroup::symmetric(4), gen(6, &["(0 1 2)", "(0 3)(1 4)(2 5)"])] {
        let list = all_subgroups(&g).unwrap();
        for a in &list.subgroups {
            for b in &list.subgroups {
                assert!(list.position(&a.join(b)).is_some());
            }
        }
        // Conjugacy classes are closed under conjugation.
        for (i, k) in list.subgroups.iter().enumerate() {
            for x in g.generators() {
                let j = list.position(&k.conjugate(x)).unwrap();
                assert_eq!(list.class_of[i], list.class_of[j]);
            }
        }
    }
}

#[test]
fn core_examples() {
    let s4 = PermutationGroup::symmetric(4);
    let d41 = gen(4, &["(0 1 2 3)", "(0 2)"]);
    let v4n = gen(4, &["(0 1)(2 3)", "(0 2)(1 3)"]);
    assert_eq!(core(&s4, &d41).unwrap().elements(), v4n.elements());
    assert_eq!(core(&s4, &s4).unwrap().elements(), s4.elements());
    // S3 x S3 and the kernel of sgn(x)sgn(y).
    let s3s3 = gen(6, &["(0 1 2)", "(0 1)", "(3 4 5)", "(3 4)"]);
    let ker =
        PermutationGroup::from_elements(6, s3s3.elements().iter().filter(|x| x.is_even()).cloned().collect()).unwrap();
    assert_eq!(ker.order(), 18);
    assert_eq!(core(&s3s3, &ker).unwrap().elements(), ker.elements());
    assert_eq!(core(&s4, &gen(6, &["(0 1)"])).unwrap_err(), PermError::NotASubgroup);
}

#[test]
fn core_is_largest_normal_subgroup_inside() {
    let groups =
        [d4().0, d6().0, PermutationGroup::symmetric(4), gen(6, &["(0 1 2)", "(3 4 5)", "(0 3 1 4)(2 5)", "(3 4)"])];
    for g in groups {
        let list = all_subgroups(&g).unwrap();
        let normals: Vec<&PermutationGroup> = list.subgroups.iter().filter(|n| n.is_normal_in(&g)).collect();
        for k in &list.subgroups {
            let c = core(&g, k).unwrap();
            assert!(c.is_subgroup_of(k));
            assert!(c.is_normal_in(&g));
            for n in &normals {
                if n.is_subgroup_of(k) {
                    assert!(n.is_subgroup_of(&c));
                }
            }
        }
    }
}

#[test]
fn fixed_coset_examples() {
    let s4 = PermutationGroup::symmetric(4);
    let c4 = gen(4, &["(0 1 2 3)"]);
    let fixed = fixed_cosets(&s4, &c4, &p(4, "(0 1)(2 3)")).unwrap();
    assert!(fixed.iter().any(|coset| coset.elements.contains(&p(4, "(0 3)"))));
    assert_eq!(fixed_cosets(&s4, &c4, &Permutation::identity(4)).unwrap().len(), 6);

    let (g, r, s) = d6();
    let k = words(&g, &[s.clone(), r.pow(3)]);
    assert_eq!(fixed_cosets(&g, &k, &r.pow(3)).unwrap().len(), 3);
    assert!(matches!(fixed_cosets(&g, &k, &p(6, "(0 1)")), Err(PermError::NotAnElement(_))));
}

#[test]
fn fixed_coset_count_has_index_parity_for_involutions() {
    for g in [d6().0, PermutationGroup::symmetric(4), gen(6, &["(0 1 2)(3 4 5)", "(0 3)"])] {
        let list = all_subgroups(&g).unwrap();
        for k in &list.subgroups {
            let idx = k.index_in(&g);
            for c in g.involutions() {
                let n = fixed_cosets(&g, k, &c).unwrap().len();
                assert_eq!(n % 2, idx % 2);
                assert_eq!(n, count_fixed_cosets(&g, k, &c));
            }
        }
    }
}

#[test]
fn intermediate_subgroup_examples() {
    // S4 x C2 acting on {0..3} and {4,5}; H = (D4, f) with kernel C4.
    let g = gen(6, &["(0 1 2 3)", "(0 1)", "(4 5)"]);
    let h = gen(6, &["(0 1 2 3)", "(0 2)(4 5)"]);
    assert_eq!(h.order(), 8);
    let ks = intermediate_subgroups(&g, &h).unwrap();
    let proper: Vec<&Intermediate> = ks.iter().filter(|k| k.proper).collect();
    assert_eq!(proper.len(), 1);
    assert_eq!(proper[0].group.order(), 16);
    assert_eq!(proper[0].index, 3);
    assert_eq!(intermediate_subgroups(&g, &g).unwrap().len(), 1);
}

#[test]
fn transitive_identification_examples() {
    assert_eq!(identify_transitive_label(&PermutationGroup::symmetric(6)).unwrap(), label("6T16"));
    assert_eq!(identify_transitive_label(&gen(6, &["(0 1 2 3 4 5)"])).unwrap(), label("6T1"));
    let g72 = gen(6, &["(0 1 2)", "(3 4 5)", "(0 3 1 4)(2 5)", "(3 4)"]);
    assert_eq!(identify_transitive_label(&g72).unwrap(), label("6T13"));
    assert_eq!(identify_transitive_label(&PermutationGroup::alternating(6)).unwrap(), label("6T15"));
    assert_eq!(identify_transitive_label(&PermutationGroup::symmetric(4)).unwrap(), label("4T5"));
}

#[test]
fn admissible_sextic_groups() {
    let labels = s6_groups_with_222().unwrap();
    let names: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    assert_eq!(names, ["6T1", "6T2", "6T3", "6T5", "6T6", "6T8", "6T9", "6T11", "6T13", "6T14", "6T16"]);
    let all = transitive_labels(6).unwrap();
    assert_eq!(all.len(), 16);
    for l in all {
        let g = reference_group(l);
        if labels.contains(&l) {
            assert!(g.contains_odd(), "{l} contains a (2,2,2) element, which is odd");
        } else {
            assert!(g.elements().iter().all(|x| x.is_even()), "{l} should be even");
        }
    }
}

#[test]
fn no_two_labels_share_a_cycle_type_set() {
    assert!(cycle_type_ambiguities(4).unwrap().is_empty());
    assert!(cycle_type_ambiguities(6).unwrap().is_empty());
}

#[test]
fn cycle_type_examples() {
    let c = cycle_type(&p(6, "(0 1)(2 3)(4 5)"));
    assert_eq!(c.parts(), &[2, 2, 2]);
    assert_eq!(c.parity(), Parity::Odd);
    assert_eq!(cycle_type(&Permutation::identity(6)).parts(), &[1; 6]);
    assert_eq!(cycle_type(&p(6, "(0 1 2 3 4 5)")).parity(), Parity::Odd);
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identification_is_conjugation_invariant(k in 1usize..=16, sigma in arb_perm(6)) {
        let l = TransitiveLabel::new(6, k).unwrap();
        let g = reference_group(l).conjugate(&sigma);
        prop_assert_eq!(identify_transitive_label(&g).unwrap(), l);
    }

    #[test]
    fn generated_order_divides_factorial(gens in proptest::collection::vec(arb_perm(5), 1..3)) {
        let g = generate(&gens, 5).unwrap();
        prop_assert_eq!(120 % g.order(), 0);
        for x in &gens {
            prop_assert_eq!(g.order() as u64 % x.order(), 0);
        }
    }

    #[test]
    fn cycle_type_parts_sum_to_degree(x in arb_perm(6)) {
        let c = x.cycle_type();
        prop_assert_eq!(c.degree(), 6);
        let odd = (6 - c.parts().len()) % 2 == 1;
        prop_assert_eq!(c.parity() == Parity::Odd, odd);
    }
}
