use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::classifier::Signature;

use super::resultant::resultant_in_y;
use super::{discriminant, factor_squarefree, signature, IntegerPolynomial, NumfieldError};

/// Largest `k` tried in the substitution `x -> x + k x^2`.
pub const MAX_TSCHIRNHAUS: u32 = 20;

#[derive(Clone, Debug, Serialize)]
pub struct ResolventReport {
    /// Monic polynomial whose roots generate the field and whose pairwise sums are taken.
    pub generator: IntegerPolynomial,
    /// Monic polynomial of degree `n(n-1)/2` with roots `b_i + b_j`, `i < j`.
    pub resolvent: IntegerPolynomial,
    pub factors: Vec<IntegerPolynomial>,
    pub factor_degrees: Vec<usize>,
    pub cubic_factors: Vec<(IntegerPolynomial, Signature)>,
    /// `k` with generator roots `a + k a^2` (with `a` a root of the monic associate of `f`).
    pub shift_used: u32,
}

/// `Res_x(g(x), g(y - x)) / (2^n g(y/2))` is the square of the pair-sum polynomial of the
/// monic `g`; returns that square root.
pub fn pair_sum_polynomial(g: &IntegerPolynomial) -> Result<IntegerPolynomial, NumfieldError> {
    let n = g.degree();
    let full = resultant_in_y(g, n * n, |y| g.compose(&IntegerPolynomial::new(vec![y.clone(), -BigInt::one()])));
    let doubled =
        IntegerPolynomial::new(g.coeffs().iter().enumerate().map(|(i, c)| c * (BigInt::one() << (n - i))).collect());
    let square = full
        .div_exact(&doubled)
        .ok_or_else(|| NumfieldError::Inconsistent("2^n g(y/2) does not divide the resultant".into()))?;
    poly_sqrt(&square).ok_or_else(|| NumfieldError::Inconsistent("pair-sum resultant is not a square".into()))
}

/// Square root of a monic polynomial with integer coefficients, if it is a perfect square.
pub fn poly_sqrt(q: &IntegerPolynomial) -> Option<IntegerPolynomial> {
    if q.is_zero() || !q.is_monic() || q.degree() % 2 == 1 {
        return None;
    }
    let m = q.degree() / 2;
    let mut p = vec![BigInt::zero(); m + 1];
    p[m] = BigInt::one();
    for k in 1..=m {
        // Coefficient of y^(2m-k): 2 p_{m-k} + sum over i + j = 2m - k with m-k < i, j < m.
        let target = 2 * m - k;
        let mut acc = q.coeff(target);
        for i in (m - k + 1)..m {
            let j = target - i;
            if j > m - k && j < m {
                acc -= &p[i] * &p[j];
            }
        }
        if acc.bit(0) {
            return None;
        }
        p[m - k] = acc / 2;
    }
    let root = IntegerPolynomial::new(p);
    (&root * &root == *q).then_some(root)
}

/// Characteristic polynomial of `a + k a^2` for `a` a root of the monic `g`.
fn tschirnhaus(g: &IntegerPolynomial, k: u32) -> IntegerPolynomial {
    if k == 0 {
        return g.clone();
    }
    let k = BigInt::from(k);
    resultant_in_y(g, g.degree(), |y| IntegerPolynomial::new(vec![y.clone(), -BigInt::one(), -k.clone()]))
}

/// Two-set resolvent of a squarefree polynomial of degree 2 to 6. When pair sums collide
/// the generator is replaced by `a + k a^2` for `k = 1, 2, ...`; a shift `a + k` would not
/// help, since it moves every pair sum by the same `2k`.
pub fn two_set_resolvent(f: &IntegerPolynomial) -> Result<ResolventReport, NumfieldError> {
    let n = f.degree();
    if f.is_zero() {
        return Err(NumfieldError::ZeroPolynomial);
    }
    if !(2..=6).contains(&n) {
        return Err(NumfieldError::UnsupportedDegree(n));
    }
    if discriminant(f)?.is_zero() {
        return Err(NumfieldError::NotSquarefree);
    }
    let base = f.primitive_part().monic_associate();
    for k in 0..=MAX_TSCHIRNHAUS {
        let g = tschirnhaus(&base, k);
        if discriminant(&g)?.is_zero() {
            continue;
        }
        let resolvent = pair_sum_polynomial(&g)?;
        if resolvent.degree() == 0 {
            continue;
        }
        if resolvent.degree() > 1 && discriminant(&resolvent)?.is_zero() {
            continue;
        }
        let factors = if resolvent.degree() == 1 { vec![resolvent.clone()] } else { factor_squarefree(&resolvent)? };
        let mut factor_degrees: Vec<usize> = factors.iter().map(|q| q.degree()).collect();
        factor_degrees.sort_unstable();
        let mut cubic_factors = Vec::new();
        for q in factors.iter().filter(|q| q.degree() == 3) {
            cubic_factors.push((q.clone(), signature(q)?));
        }
        return Ok(ResolventReport { generator: g, resolvent, factors, factor_degrees, cubic_factors, shift_used: k });
    }
    Err(NumfieldError::ShiftBudgetExhausted(MAX_TSCHIRNHAUS))
}
