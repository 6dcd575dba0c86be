use cmfield::classifier::*;
use cmfield::permgroup::{
    generate, intermediate_subgroups, reference_group, Permutation, PermutationGroup, TransitiveLabel,
};
use proptest::prelude::*;

fn l(s: &str) -> TransitiveLabel {
    s.parse().unwrap()
}

fn p(n: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(n, s).unwrap()
}

#[test]
fn case_analysis_holds_for_every_admissible_label() {
    for k in ADMISSIBLE_SEXTIC {
        let label = TransitiveLabel { degree: 6, index: k };
        let report = verify_case_analysis(label).unwrap();
        assert!(report.checks.len() >= 5, "{label}: only {} checks", report.checks.len());
        for c in report.failures() {
            eprintln!("{label} FAILED {}: expected {} observed {}", c.name, c.expected, c.observed);
        }
        assert!(report.passed(), "{label}");
    }
}

#[test]
fn verification_report_serialises() {
    let report = verify_case_analysis(l("6T3")).unwrap();
    let json = report.to_json();
    assert_eq!(json["label"], "6T3");
    assert!(json["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn inadmissible_labels_are_rejected() {
    for s in ["6T4", "6T7", "6T10", "6T12", "6T15", "4T2"] {
        assert!(matches!(verify_case_analysis(l(s)), Err(ClassifierError::InadmissibleLabel(_))), "{s}");
    }
}

#[test]
fn quartic_oracle_matches_dichotomy() {
    for k in 1..=5 {
        let label = TransitiveLabel { degree: 4, index: k };
        let g = reference_group(label);
        let cfgs = valid_configurations(g, 4).unwrap();
        assert!(!cfgs.is_empty(), "{label}");
        for cfg in cfgs {
            let verdict = classify_configuration(&cfg).unwrap();
            assert_eq!(verdict.category.dichotomy(), classify_quartic(label).unwrap(), "{label}");
        }
    }
}

#[test]
fn quartic_is_cm_iff_its_quadratic_subfield_is_real() {
    for k in 1..=3 {
        let label = TransitiveLabel { degree: 4, index: k };
        let g = reference_group(label);
        for cfg in valid_configurations(g, 4).unwrap() {
            let quadratics: Vec<_> =
                intermediate_subgroups(g, cfg.stabilizer()).unwrap().into_iter().filter(|k| k.index == 2).collect();
            let any_real = quadratics
                .iter()
                .any(|k| subfield_signature(g, &k.group, cfg.conjugation()).unwrap().is_totally_real());
            let cm = classify_configuration(&cfg).unwrap().category == FieldType::CmField;
            assert_eq!(cm, any_real, "{label} c={}", cfg.conjugation());
        }
    }
}

#[test]
fn s4_c2_cyclic_kernel_with_e1_in_c4_has_real_places() {
    // H = (D4^1, f) with ker f = C4^1. c = ((0 2)(1 3), -1) lies outside H but is conjugate
    // into H, so it fixes cosets and F would not be totally imaginary.
    let g = generate(&[p(6, "(0 1 2 3)"), p(6, "(0 1)"), p(6, "(4 5)")], 6).unwrap();
    let h = generate(&[p(6, "(0 1 2 3)"), p(6, "(0 2)(4 5)")], 6).unwrap();
    assert_eq!(h.order(), 8);
    let c = p(6, "(0 2)(1 3)(4 5)");
    assert!(!h.contains(&c));
    let err = GroupConfiguration::new(g.clone(), h.clone(), c).unwrap_err();
    assert!(matches!(err, ClassifierError::InvalidConfiguration(_)));

    // The central involution is fixed point free and gives a CM field.
    let cfg = GroupConfiguration::new(g, h, p(6, "(4 5)")).unwrap();
    let v = classify_configuration(&cfg).unwrap();
    assert_eq!(v.category, FieldType::CmField);
    let (k0, k1) = v.witness().unwrap();
    assert_eq!((k0.order(), k1.order()), (16, 8));
}

#[test]
fn subfield_reports_for_d6() {
    let g = reference_group(l("6T3")).clone();
    let cfgs = valid_configurations(&g, 6).unwrap();
    for cfg in cfgs {
        let reports = subfield_reports(&cfg).unwrap();
        let degrees: Vec<usize> = reports.iter().map(|r| r.degree).collect();
        assert_eq!(degrees, vec![2, 3]);
        assert_eq!(reports[0].signature, Signature::new(0, 1));
        assert!(reports[0].is_galois_over_q);
        assert!(!reports[1].is_galois_over_q);
    }
}

#[test]
fn configurations_reject_real_embeddings() {
    let s6 = PermutationGroup::symmetric(6);
    let err = GroupConfiguration::from_transitive(s6, p(6, "(0 1)")).unwrap_err();
    assert!(matches!(err, ClassifierError::InvalidConfiguration(_)));
}

fn arb_admissible() -> impl Strategy<Value = TransitiveLabel> {
    prop::sample::select(ADMISSIBLE_SEXTIC.to_vec()).prop_map(|index| TransitiveLabel { degree: 6, index })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The verdict of a configuration does not depend on the choice of H and c within
    /// their conjugacy classes.
    #[test]
    fn verdict_is_conjugation_invariant(label in arb_admissible(), pick in any::<prop::sample::Index>(), x in any::<prop::sample::Index>()) {
        let g = reference_group(label);
        let cfgs = valid_configurations(g, 6).unwrap();
        let cfg = &cfgs[pick.index(cfgs.len())];
        let x = &g.elements()[x.index(g.order())];
        let moved = GroupConfiguration::new(g.clone(), cfg.stabilizer().conjugate(x), cfg.conjugation().conjugate_by(x)).unwrap();
        prop_assert_eq!(classify_configuration(cfg).unwrap().category, classify_configuration(&moved).unwrap().category);
    }

    /// A field and each of its subfields have signatures adding up correctly: `r1 = 0` for F
    /// and `degree = [G:K]` for every subfield.
    #[test]
    fn subfield_degrees_divide_six(label in arb_admissible(), pick in any::<prop::sample::Index>()) {
        let g = reference_group(label);
        let cfgs = valid_configurations(g, 6).unwrap();
        let cfg = &cfgs[pick.index(cfgs.len())];
        for r in subfield_reports(cfg).unwrap() {
            prop_assert_eq!(6 % r.degree, 0);
            prop_assert_eq!(r.signature.degree(), r.degree);
        }
    }
}
