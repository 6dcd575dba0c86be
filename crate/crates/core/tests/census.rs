use cmfield::census::*;
use cmfield::classifier::FieldType;
use cmfield::lmfdb::{census_entries, fixtures};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

#[test]
fn published_constants_give_the_quartic_split() {
    let r = bayes_posterior(&QuarticDensities::published()).unwrap();
    assert_eq!(r.rounded(5), ("0.66948".to_string(), "0.33052".to_string()));
    // 0.3 * 0.82889 / (0.3 * 0.82889 + 0.71747 * 0.17111), computed by hand.
    assert_eq!(r.p_s4_given_ti, q(248667, 1000000) / (q(248667, 1000000) + q(1227662917, 10000000000)));
}

#[test]
fn uninformative_likelihood_returns_the_prior() {
    let d = QuarticDensities::from_decimals("0.17111", "0.82889", "0.4", "0.4").unwrap();
    assert_eq!(bayes_posterior(&d).unwrap().p_s4_given_ti, q(82889, 100000));
    let d = QuarticDensities::from_decimals("0.5", "0.5", "0.5", "0.5").unwrap();
    assert_eq!(bayes_posterior(&d).unwrap().rounded(5).0, "0.50000");
}

fn entry(disc: i64, category: FieldType) -> CensusEntry {
    CensusEntry { degree: 4, r1: 0, abs_disc: BigInt::from(disc), category }
}

#[test]
fn degenerate_record_sets() {
    let all_cm: Vec<CensusEntry> = (1..=10).map(|i| entry(100 * i, FieldType::CmField)).collect();
    for c in empirical_ratio(&all_cm, &[100, 500, 1000]).unwrap() {
        assert_eq!(c.ratio, Some(BigRational::one()));
    }
    let counts = empirical_ratio(&[], &[10, 20]).unwrap();
    assert!(counts.iter().all(|c| c.ratio.is_none() && c.n_ti == 0));
    let counts = empirical_ratio(&all_cm, &[50]).unwrap();
    assert_eq!(counts[0].ratio, None);
}

#[test]
fn cm_type_counts_both_cm_categories() {
    let es = [entry(117, FieldType::CmTypeNotCm), entry(125, FieldType::CmField), entry(229, FieldType::TrType)];
    let c = &empirical_ratio(&es, &[1000]).unwrap()[0];
    assert_eq!((c.n_ti, c.n_cm), (3, 2));
    assert_eq!(c.ratio, Some(q(2, 3)));
}

#[test]
fn quartic_fixture_census() {
    let (entries, failed) = census_entries(&fixtures::quartics());
    assert!(failed.is_empty(), "{failed:?}");
    let grid: Vec<u64> = (1..=12).map(|i| i * 500).collect();
    let counts = empirical_ratio(&entries, &grid).unwrap();
    for w in counts.windows(2) {
        assert!(w[0].n_ti <= w[1].n_ti && w[0].n_cm <= w[1].n_cm);
    }
    for c in &counts {
        if let Some(r) = &c.ratio {
            assert!(r >= &BigRational::zero() && r <= &BigRational::one());
        }
    }
    assert_eq!(counts.last().unwrap().n_ti, entries.len());
    let summary = summarize(4, counts);
    assert_eq!(summary.asymptotic_cm.as_deref(), Some("0.33052"));
    assert!(summary.direction.is_some());
    let csv = to_csv(&summary.counts).unwrap();
    assert_eq!(csv.lines().count(), grid.len() + 1);
    assert!(serde_json::to_value(&summary).unwrap()["note"].as_str().unwrap().contains("not asymptotic"));
}

fn prob() -> impl Strategy<Value = BigRational> {
    (0i64..=1000).prop_map(|n| q(n, 1000))
}

proptest! {
    #[test]
    fn posterior_sums_to_one(d4 in prob(), ts in prob(), td in prob()) {
        let d = QuarticDensities::new(d4.clone(), BigRational::one() - d4, ts, td).unwrap();
        if let Ok(r) = bayes_posterior(&d) {
            prop_assert_eq!(&r.p_s4_given_ti + &r.p_cm, BigRational::one());
            prop_assert!(r.p_s4_given_ti >= BigRational::zero() && r.p_s4_given_ti <= BigRational::one());
        }
    }

    #[test]
    fn common_likelihood_scale_cancels(d4 in prob(), ts in prob(), td in prob(), k in 1i64..=1000) {
        let s4 = BigRational::one() - &d4;
        let base = QuarticDensities::new(d4.clone(), s4.clone(), ts.clone(), td.clone()).unwrap();
        let scale = q(k, 1000);
        let scaled = QuarticDensities::new(d4, s4, ts * &scale, td * &scale).unwrap();
        match (bayes_posterior(&base), bayes_posterior(&scaled)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            _ => prop_assert!(false, "only one side failed"),
        }
    }

    #[test]
    fn counts_are_monotone(discs in proptest::collection::vec((1i64..10_000, 0u8..3), 0..60),
                           grid in proptest::collection::vec(1u64..12_000, 1..10)) {
        let cats = [FieldType::CmField, FieldType::CmTypeNotCm, FieldType::TrType];
        let es: Vec<CensusEntry> = discs.iter().map(|&(d, c)| entry(d, cats[c as usize])).collect();
        let counts = empirical_ratio(&es, &grid).unwrap();
        for w in counts.windows(2) {
            prop_assert!(w[0].bound < w[1].bound);
            prop_assert!(w[0].n_ti <= w[1].n_ti && w[0].n_cm <= w[1].n_cm);
        }
        for c in &counts {
            prop_assert!(c.n_cm <= c.n_ti);
            prop_assert_eq!(c.ratio.is_none(), c.n_ti == 0);
        }
    }
}
