use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::classifier::Signature;

use super::{discriminant, IntegerPolynomial, NumfieldError};

type QPoly = Vec<BigRational>;

fn to_q(f: &IntegerPolynomial) -> QPoly {
    f.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let q = r.last().expect("non-empty") / lb;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &q * bc;
        }
        // The leading term cancels exactly, so each pass shortens r.
        r = trim(r);
    }
    r
}

/// Sturm sequence `p0 = f, p1 = f', p_{k+1} = -rem(p_{k-1}, p_k)`.
pub fn sturm_sequence(f: &IntegerPolynomial) -> Vec<Vec<BigRational>> {
    let mut seq = vec![to_q(f), to_q(&f.derivative())];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        if seq[n - 1].len() == 1 {
            break;
        }
        let r: QPoly = rem(&seq[n - 2], &seq[n - 1]).into_iter().map(|c| -c).collect();
        seq.push(r);
    }
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign(c: &BigRational) -> i8 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

/// Number of distinct real roots of `f` by Sturm's theorem on `(-inf, inf)`.
pub fn count_real_roots(f: &IntegerPolynomial) -> usize {
    if f.degree() == 0 {
        return 0;
    }
    let seq = sturm_sequence(f);
    let at_pos = variations(seq.iter().map(|p| sign(p.last().expect("non-empty"))));
    let at_neg = variations(seq.iter().map(|p| {
        let s = sign(p.last().expect("non-empty"));
        if (p.len() - 1) % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    at_neg - at_pos
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn count_real_roots_between(f: &IntegerPolynomial, a: &BigRational, b: &BigRational) -> usize {
    let seq = sturm_sequence(f);
    let at = |x: &BigRational| {
        variations(seq.iter().map(|p| sign(&p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c))))
    };
    at(a).saturating_sub(at(b))
}

/// Signature `(r1, r2)` of a squarefree polynomial.
pub fn signature(f: &IntegerPolynomial) -> Result<Signature, NumfieldError> {
    if discriminant(f)?.is_zero() {
        return Err(NumfieldError::NotSquarefree);
    }
    let r1 = count_real_roots(f);
    Ok(Signature::new(r1, (f.degree() - r1) / 2))
}
