//! Factorisation of squarefree integer polynomials: modular factorisation, multifactor
//! Hensel lifting and Zassenhaus recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, FpPoly};
use super::{discriminant, IntegerPolynomial, NumfieldError};

/// Number of good primes tried when choosing the factorisation prime.
const PRIME_TRIALS: usize = 8;

/// Polynomial over `Z / m` stored with coefficients in `[0, m)`.
type ModPoly = Vec<BigInt>;

fn trim(mut a: ModPoly) -> ModPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn lift_fp(a: &FpPoly) -> ModPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn mul_mod(a: &ModPoly, b: &ModPoly, m: &BigInt) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out.into_iter().map(|c| c.mod_floor(m)).collect())
}

fn sub_mod(a: &ModPoly, b: &ModPoly, m: &BigInt) -> ModPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m)).collect())
}

fn to_fp(a: &ModPoly, p: u64) -> FpPoly {
    let m = BigInt::from(p);
    modp::trim(a.iter().map(|c| c.mod_floor(&m).to_u64().expect("reduced")).collect())
}

/// Lifts `f = g h mod p` (monic `g`, `h`, coprime mod `p`, `f` monic mod `p^k` for all `k`)
/// to `f = G H mod p^e`.
fn hensel_two(f: &ModPoly, g: &FpPoly, h: &FpPoly, p: u64, e: u32) -> (ModPoly, ModPoly) {
    let (_, s, t) = modp::ext_gcd(g, h, p);
    let big_p = BigInt::from(p);
    let mut gk = lift_fp(g);
    let mut hk = lift_fp(h);
    let mut pk = big_p.clone();
    for _ in 1..e {
        let next = &pk * &big_p;
        let err = sub_mod(f, &mul_mod(&gk, &hk, &next), &next);
        // err is divisible by p^k.
        let err_p: ModPoly = err.iter().map(|c| c / &pk).collect();
        let err_fp = to_fp(&err_p, p);
        let dg = modp::rem(&modp::mul(&t, &err_fp, p), g, p);
        let dh = modp::rem(&modp::mul(&s, &err_fp, p), h, p);
        let add = |a: &ModPoly, d: &FpPoly| -> ModPoly {
            let n = a.len().max(d.len());
            trim(
                (0..n)
                    .map(|i| {
                        let x = a.get(i).cloned().unwrap_or_default();
                        let y = BigInt::from(d.get(i).copied().unwrap_or(0));
                        (x + y * &pk).mod_floor(&next)
                    })
                    .collect(),
            )
        };
        gk = add(&gk, &dg);
        hk = add(&hk, &dh);
        pk = next;
    }
    (gk, hk)
}

/// Lifts the monic factorisation `f = prod factors mod p` to `mod p^e`.
fn hensel_multi(f: &ModPoly, factors: &[FpPoly], p: u64, e: u32) -> Vec<ModPoly> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let g = &factors[0];
    let h = factors[1..].iter().fold(vec![1u64], |acc, q| modp::mul(&acc, q, p));
    let (gl, hl) = hensel_two(f, g, &h, p, e);
    let mut out = vec![gl];
    out.extend(hensel_multi(&hl, &factors[1..], p, e));
    out
}

fn symmetric(a: &ModPoly, m: &BigInt) -> IntegerPolynomial {
    let half = m / 2;
    IntegerPolynomial::new(a.iter().map(|c| if c > &half { c - m } else { c.clone() }).collect())
}

/// Choose a prime `p > 2` with `p ∤ lc(f)` and `f mod p` squarefree, preferring few factors.
fn choose_prime(f: &IntegerPolynomial) -> (u64, Vec<usize>) {
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut tried = 0;
    for p in modp::primes().skip(1) {
        let Some(degrees) = modp::factor_degrees(f, p) else { continue };
        if best.as_ref().is_none_or(|(_, d)| degrees.len() < d.len()) {
            best = Some((p, degrees));
        }
        tried += 1;
        if tried == PRIME_TRIALS || best.as_ref().is_some_and(|(_, d)| d.len() == 1) {
            break;
        }
    }
    best.expect("a squarefree polynomial is squarefree modulo all but finitely many primes")
}

/// Irreducible factors over `Z` of a primitive squarefree polynomial of positive degree,
/// each primitive with positive leading coefficient.
pub fn factor_squarefree(f: &IntegerPolynomial) -> Result<Vec<IntegerPolynomial>, NumfieldError> {
    if f.is_zero() {
        return Err(NumfieldError::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Err(NumfieldError::ConstantPolynomial);
    }
    if discriminant(f)?.is_zero() {
        return Err(NumfieldError::NotSquarefree);
    }
    let f = f.primitive_part();
    if f.degree() == 1 {
        return Ok(vec![f]);
    }
    let (p, degrees) = choose_prime(&f);
    if degrees.len() == 1 {
        return Ok(vec![f]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let modular = modp::factor(&modp::reduce(&f, p), p, &mut rng);

    // Any factor of f times lc(f) has coefficients below |lc| 2^n ||f||_2.
    let n = f.degree();
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = f.leading().abs() * (BigInt::one() << n) * norm2;
    let big_p = BigInt::from(p);
    let mut e = 1u32;
    let mut m = big_p.clone();
    while m <= &bound * 2 {
        m *= &big_p;
        e += 1;
    }
    let lc_inv = f.leading().extended_gcd(&m).x.mod_floor(&m);
    let f_monic: ModPoly = f.coeffs().iter().map(|c| (c * &lc_inv).mod_floor(&m)).collect();
    let lifted = hensel_multi(&f_monic, &modular, p, e);

    // Recombination over subsets of increasing size.
    let mut remaining: Vec<ModPoly> = lifted;
    let mut current = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for subset in subsets(remaining.len(), size) {
            let lc = current.leading();
            let prod = subset.iter().fold(vec![lc.mod_floor(&m)], |acc, &i| mul_mod(&acc, &remaining[i], &m));
            let candidate = symmetric(&prod, &m).primitive_part();
            if let Some(q) = current.div_exact(&candidate) {
                hit = Some((subset, candidate, q));
                break;
            }
        }
        match hit {
            Some((subset, candidate, q)) => {
                found.push(candidate);
                current = q.primitive_part();
                remaining =
                    remaining.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, g)| g).collect();
            }
            None => size += 1,
        }
    }
    found.push(current);
    found.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(found)
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `true` iff `f` is irreducible over the rationals. A squarefree `f` that stays irreducible
/// modulo some prime is certified at once; otherwise the full factorisation decides.
pub fn is_irreducible(f: &IntegerPolynomial) -> Result<bool, NumfieldError> {
    if f.is_zero() {
        return Err(NumfieldError::ZeroPolynomial);
    }
    if f.degree() == 0 {
        return Err(NumfieldError::ConstantPolynomial);
    }
    if discriminant(f)?.is_zero() {
        return Ok(false);
    }
    Ok(factor_squarefree(f)?.len() == 1)
}
