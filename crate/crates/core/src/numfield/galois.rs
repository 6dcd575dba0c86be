use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use serde::Serialize;

use crate::permgroup::{reference_group, transitive_labels, CycleType, PermutationGroup, TransitiveLabel};

use super::modp::{factor_degrees, primes};
use super::{discriminant, is_irreducible, two_set_resolvent, IntegerPolynomial, NumfieldError};

/// Default number of usable primes examined by the sieve.
pub const DEFAULT_PRIME_BUDGET: usize = 200;
/// The sieve may stop early once a single candidate survives and this many primes were used.
pub const MIN_PRIMES_BEFORE_STOP: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IdentificationMethod {
    #[serde(rename = "sieve")]
    Sieve,
    #[serde(rename = "sieve+resolvent")]
    SieveResolvent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Elimination {
    pub label: TransitiveLabel,
    pub reason: String,
}

/// Galois group identification. Frobenius sieving cannot exclude over-groups that have
/// simply not shown their extra cycle types yet, so the minimal consistent candidate is
/// chosen: the result is certified only up to that heuristic.
#[derive(Clone, Debug, Serialize)]
pub struct GaloisIdentification {
    pub label: TransitiveLabel,
    pub method: IdentificationMethod,
    pub primes_used: usize,
    pub candidates_eliminated: Vec<Elimination>,
    pub observed_cycle_types: Vec<CycleType>,
    pub disc_is_square: bool,
    pub resolvent_degrees: Option<Vec<usize>>,
}

/// Frobenius cycle type at `p`, or `None` when `p` divides `disc(f) lc(f)`.
pub fn frobenius_pattern(f: &IntegerPolynomial, p: u64) -> Option<CycleType> {
    factor_degrees(f, p).map(CycleType::new)
}

/// Cycle types of Frobenius at the first `prime_budget` primes not dividing `disc(f) lc(f)`.
pub fn frobenius_patterns(f: &IntegerPolynomial, prime_budget: usize) -> BTreeSet<CycleType> {
    good_primes(f).take(prime_budget).map(|(_, t)| t).collect()
}

fn good_primes(f: &IntegerPolynomial) -> impl Iterator<Item = (u64, CycleType)> + '_ {
    primes().filter_map(move |p| frobenius_pattern(f, p).map(|t| (p, t)))
}

pub fn is_square(n: &num_bigint::BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &(&r * &r) == n
    }
}

fn type_set(g: &PermutationGroup) -> BTreeSet<CycleType> {
    g.cycle_type_counts().into_keys().collect()
}

/// Sizes of the orbits of `g` on unordered pairs of points, sorted.
pub fn pair_orbit_sizes(g: &PermutationGroup) -> Vec<usize> {
    let n = g.degree();
    let mut seen = BTreeSet::new();
    let mut sizes = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if seen.contains(&(a, b)) {
                continue;
            }
            let orbit: BTreeSet<(usize, usize)> = g
                .elements()
                .iter()
                .map(|x| {
                    let (u, v) = (x.image(a), x.image(b));
                    (u.min(v), u.max(v))
                })
                .collect();
            sizes.push(orbit.len());
            seen.extend(orbit);
        }
    }
    sizes.sort_unstable();
    sizes
}

/// Candidates whose cycle-type set is not a proper superset of another candidate's.
fn minimal(cands: &[TransitiveLabel], sets: &BTreeMap<TransitiveLabel, BTreeSet<CycleType>>) -> Vec<TransitiveLabel> {
    cands
        .iter()
        .copied()
        .filter(|a| !cands.iter().any(|b| b != a && sets[b].is_subset(&sets[a]) && sets[b] != sets[a]))
        .collect()
}

pub fn identify_galois(f: &IntegerPolynomial) -> Result<GaloisIdentification, NumfieldError> {
    identify_galois_with_budget(f, DEFAULT_PRIME_BUDGET)
}

pub fn identify_galois_with_budget(
    f: &IntegerPolynomial,
    prime_budget: usize,
) -> Result<GaloisIdentification, NumfieldError> {
    let n = f.degree();
    if n != 4 && n != 6 {
        return Err(NumfieldError::UnsupportedDegree(n));
    }
    if !is_irreducible(f)? {
        return Err(NumfieldError::Reducible);
    }
    let disc_is_square = is_square(&discriminant(f)?);
    let sets: BTreeMap<TransitiveLabel, BTreeSet<CycleType>> =
        transitive_labels(n)?.into_iter().map(|l| (l, type_set(reference_group(l)))).collect();
    let mut eliminated = Vec::new();
    let mut cands: Vec<TransitiveLabel> = Vec::new();
    for &label in sets.keys() {
        if reference_group(label).contains_odd() != disc_is_square {
            cands.push(label);
        } else {
            let reason =
                if disc_is_square { "odd group, square discriminant" } else { "even group, non-square discriminant" };
            eliminated.push(Elimination { label, reason: reason.into() });
        }
    }

    let mut observed = BTreeSet::new();
    let mut primes_used = 0;
    for (_, t) in good_primes(f).take(prime_budget) {
        primes_used += 1;
        if observed.insert(t.clone()) {
            cands.retain(|l| {
                let keep = sets[l].contains(&t);
                if !keep {
                    eliminated.push(Elimination { label: *l, reason: format!("no element of cycle type {t}") });
                }
                keep
            });
        }
        if primes_used >= MIN_PRIMES_BEFORE_STOP && minimal(&cands, &sets).len() == 1 {
            break;
        }
    }
    let mins = minimal(&cands, &sets);
    for l in &cands {
        if !mins.contains(l) {
            eliminated.push(Elimination { label: *l, reason: "cycle types of a smaller candidate suffice".into() });
        }
    }
    let observed_cycle_types: Vec<CycleType> = observed.into_iter().collect();
    let mut result = GaloisIdentification {
        label: TransitiveLabel { degree: n, index: 0 },
        method: IdentificationMethod::Sieve,
        primes_used,
        candidates_eliminated: eliminated,
        observed_cycle_types,
        disc_is_square,
        resolvent_degrees: None,
    };
    match mins.as_slice() {
        [] => Err(NumfieldError::UnresolvedGalois(Vec::new())),
        [only] => {
            result.label = *only;
            Ok(result)
        }
        _ => {
            let degrees = two_set_resolvent(f)?.factor_degrees;
            let mut matching = Vec::new();
            for l in mins {
                if pair_orbit_sizes(reference_group(l)) == degrees {
                    matching.push(l);
                } else {
                    result.candidates_eliminated.push(Elimination {
                        label: l,
                        reason: format!("pair orbits differ from resolvent factor degrees {degrees:?}"),
                    });
                }
            }
            result.resolvent_degrees = Some(degrees);
            match matching.as_slice() {
                [only] => {
                    result.label = *only;
                    result.method = IdentificationMethod::SieveResolvent;
                    Ok(result)
                }
                _ => Err(NumfieldError::UnresolvedGalois(matching)),
            }
        }
    }
}
