//! Dense polynomials over `F_p` for word-sized primes, with distinct-degree and
//! Cantor–Zassenhaus factorisation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

use super::IntegerPolynomial;

/// Coefficients in `[0, p)`, ascending, trimmed.
pub type FpPoly = Vec<u64>;

pub fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn reduce(f: &IntegerPolynomial, p: u64) -> FpPoly {
    let m = BigInt::from(p);
    trim(f.coeffs().iter().map(|c| c.mod_floor(&m).to_u64().expect("reduced")).collect())
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

pub fn add(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub fn sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub fn mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulm(x, y, p)) % p;
        }
    }
    trim(out)
}

pub fn scale(a: &FpPoly, k: u64, p: u64) -> FpPoly {
    trim(a.iter().map(|&x| mulm(x, k, p)).collect())
}

pub fn monic(a: &FpPoly, p: u64) -> FpPoly {
    match a.last() {
        Some(&lc) => scale(a, inv(lc, p), p),
        None => Vec::new(),
    }
}

pub fn divrem(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let li = inv(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = mulm(*r.last().expect("non-empty"), li, p);
        q[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[i + shift] = (r[i + shift] + p - mulm(c, bc, p)) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    divrem(a, b, p).1
}

/// Monic gcd.
pub fn gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s a + t b = g` monic.
pub fn ext_gcd(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let li = inv(*r0.last().expect("gcd of non-zero inputs"), p);
    (scale(&r0, li, p), scale(&s0, li, p), scale(&t0, li, p))
}

pub fn derivative(a: &FpPoly, p: u64) -> FpPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulm(c, i as u64 % p, p)).collect())
}

/// `base^e mod m`
pub fn pow_poly_mod(base: &FpPoly, mut e: u64, m: &FpPoly, p: u64) -> FpPoly {
    let mut result: FpPoly = rem(&vec![1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

pub fn is_squarefree(a: &FpPoly, p: u64) -> bool {
    gcd(a, &derivative(a, p), p).len() == 1
}

/// Distinct-degree factorisation of a monic squarefree polynomial: pairs `(d, g_d)` where
/// `g_d` is the product of all irreducible factors of degree `d`.
pub fn distinct_degree(f: &FpPoly, p: u64) -> Vec<(usize, FpPoly)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: FpPoly = vec![0, 1];
    let mut h = rem(&x, &f, p);
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            out.push((f.len() - 1, f.clone()));
            break;
        }
        h = pow_poly_mod(&h, p, &f, p);
        let g = gcd(&f, &sub(&h, &x, p), p);
        if g.len() > 1 {
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
            out.push((d, g));
        }
    }
    out
}

/// Splits a monic squarefree product of irreducibles of equal degree `d` (odd `p`).
pub fn equal_degree<R: Rng>(f: &FpPoly, d: usize, p: u64, rng: &mut R) -> Vec<FpPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    assert!(p % 2 == 1, "Cantor-Zassenhaus needs an odd prime");
    // (p^d - 1) / 2 can exceed u64 for large p^d; exponentiate in stages instead.
    loop {
        let a: FpPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let g = gcd(&a, f, p);
        let split = if g.len() > 1 {
            g
        } else {
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut norm = a.clone();
            let mut frob = a.clone();
            for _ in 1..d {
                frob = pow_poly_mod(&frob, p, f, p);
                norm = rem(&mul(&norm, &frob, p), f, p);
            }
            let b = pow_poly_mod(&norm, (p - 1) / 2, f, p);
            gcd(&sub(&b, &vec![1], p), f, p)
        };
        if split.len() > 1 && split.len() < f.len() {
            let other = divrem(f, &split, p).0;
            let mut out = equal_degree(&split, d, p, rng);
            out.extend(equal_degree(&monic(&other, p), d, p, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial (leading coefficient dropped).
pub fn factor<R: Rng>(f: &FpPoly, p: u64, rng: &mut R) -> Vec<FpPoly> {
    let f = monic(f, p);
    let mut out = Vec::new();
    for (d, g) in distinct_degree(&f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort();
    out
}

/// Degrees of the irreducible factors of `f mod p`, when `p` does not divide the leading
/// coefficient and `f mod p` is squarefree.
pub fn factor_degrees(f: &IntegerPolynomial, p: u64) -> Option<Vec<usize>> {
    let fp = reduce(f, p);
    if fp.len() != f.degree() + 1 || !is_squarefree(&fp, p) {
        return None;
    }
    let mut degrees = Vec::new();
    for (d, g) in distinct_degree(&monic(&fp, p), p) {
        degrees.extend(std::iter::repeat_n(d, (g.len() - 1) / d));
    }
    Some(degrees)
}

/// Primes in increasing order, starting at 2.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}
