use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::NumfieldError;

/// Polynomial with arbitrary-precision integer coefficients, stored in ascending degree.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x`
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `f / content(f)` with a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::constant(BigInt::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `f(g(x))`
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| &(&acc * g) + &Self::constant(c.clone()))
    }

    /// `f(x + k)`
    pub fn shift(&self, k: &BigInt) -> Self {
        self.compose(&Self::new(vec![k.clone(), BigInt::one()]))
    }

    /// `f(a x)`
    pub fn scale_variable(&self, a: &BigInt) -> Self {
        let mut pw = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw *= a;
        }
        Self::new(out)
    }

    /// `lc^(n-1) f(x / lc)`: a monic integer polynomial whose roots are `lc` times those of `f`.
    pub fn monic_associate(&self) -> Self {
        let n = self.degree();
        let lc = self.leading();
        if lc.is_one() || self.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(n + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            // c_i lc^(n-1-i) for i < n, and 1 for i = n.
            if i == n {
                out.push(BigInt::one());
            } else {
                out.push(c * num_traits::pow(lc.clone(), n - 1 - i));
            }
        }
        Self::new(out)
    }

    /// Pseudo-remainder `lc(d)^(deg f - deg d + 1) f mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "pseudo-division by zero");
        let mut r = self.clone();
        let dn = d.degree();
        let lc = d.leading();
        if r.degree() < dn || r.is_zero() {
            return r;
        }
        let mut e = r.degree() - dn + 1;
        while !r.is_zero() && r.degree() >= dn {
            let shift = r.degree() - dn;
            let lr = r.leading();
            let mut next: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lc).collect();
            for (i, dc) in d.coeffs.iter().enumerate() {
                next[i + shift] -= &lr * dc;
            }
            r = Self::new(next);
            e -= 1;
        }
        r.scale(&num_traits::pow(lc, e))
    }

    /// Exact quotient over the integers, if `d` divides `self` in `Z[x]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut r = self.coeffs.clone();
        let dn = d.degree();
        let lc = d.leading();
        let mut q = vec![BigInt::zero(); self.degree() - dn + 1];
        for k in (0..q.len()).rev() {
            let (qk, rem) = r[k + dn].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qk * dc;
            }
            q[k] = qk;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Root bound: every complex root has absolute value below `1 + max |c_i / lc|`.
    pub fn cauchy_bound(&self) -> BigRational {
        let lc = BigRational::from_integer(self.leading().abs());
        let m = self.coeffs[..self.degree()]
            .iter()
            .map(|c| BigRational::from_integer(c.abs()) / &lc)
            .max()
            .unwrap_or_else(BigRational::zero);
        m + BigRational::one()
    }

    /// Ascending coefficient list, comma separated.
    pub fn to_coefficient_string(&self) -> String {
        self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntegerPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Add for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn add(self, o: &IntegerPolynomial) -> IntegerPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntegerPolynomial::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn sub(self, o: &IntegerPolynomial) -> IntegerPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntegerPolynomial::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn mul(self, o: &IntegerPolynomial) -> IntegerPolynomial {
        if self.is_zero() || o.is_zero() {
            return IntegerPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntegerPolynomial::new(out)
    }
}

impl Neg for &IntegerPolynomial {
    type Output = IntegerPolynomial;
    fn neg(self) -> IntegerPolynomial {
        IntegerPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Parses either an ascending coefficient list (`"1,-1,0,0,1"`, brackets optional) or a
/// sparse expression in one variable (`"x^4 - x + 1"`, `"1/2*x^2 + 3x"`). A coefficient
/// precedes the variable, optionally followed by `*`. Rational coefficients are cleared by
/// the lcm of their denominators; decimals are rejected.
impl FromStr for IntegerPolynomial {
    type Err = NumfieldError;

    fn from_str(text: &str) -> Result<Self, NumfieldError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(NumfieldError::Parse("empty polynomial".into()));
        }
        let rational = if s.chars().any(|c| c.is_ascii_alphabetic()) { parse_sparse(&s)? } else { parse_list(&s)? };
        let lcm = rational.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let coeffs = rational.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        Ok(IntegerPolynomial::new(coeffs))
    }
}

fn parse_number(s: &str) -> Result<BigRational, NumfieldError> {
    let bad = || NumfieldError::Parse(format!("bad coefficient {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) if !d.starts_with(['+', '-']) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(NumfieldError::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

fn parse_list(s: &str) -> Result<Vec<BigRational>, NumfieldError> {
    let inner = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(s);
    inner.split(',').map(parse_number).collect()
}

fn parse_sparse(s: &str) -> Result<Vec<BigRational>, NumfieldError> {
    let var = s.chars().find(|c| c.is_ascii_alphabetic()).expect("caller checked");
    if s.chars().any(|c| c.is_ascii_alphabetic() && c != var) {
        return Err(NumfieldError::Parse("polynomial must use a single variable".into()));
    }
    let s = s.replace("**", "^");
    // Split into signed terms.
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'/' {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    let mut coeffs: Vec<BigRational> = Vec::new();
    for term in terms {
        let (sign, body) = match term.as_bytes().first() {
            Some(b'-') => (-1, &term[1..]),
            Some(b'+') => (1, &term[1..]),
            _ => (1, term),
        };
        if body.is_empty() {
            return Err(NumfieldError::Parse(format!("dangling sign in {s:?}")));
        }
        let (coef, exp) = match body.find(var) {
            None => (parse_number(body)?, 0usize),
            Some(pos) => {
                let head = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
                let coef = if head.is_empty() { BigRational::one() } else { parse_number(head)? };
                let tail = &body[pos + 1..];
                let exp = match tail.strip_prefix('^') {
                    Some(e) => e.parse().map_err(|_| NumfieldError::Parse(format!("bad exponent in {term:?}")))?,
                    None if tail.is_empty() => 1,
                    None => return Err(NumfieldError::Parse(format!("unexpected {tail:?} in {term:?}"))),
                };
                (coef, exp)
            }
        };
        if exp > 64 {
            return Err(NumfieldError::Parse(format!("exponent {exp} too large")));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigRational::zero());
        }
        coeffs[exp] += coef * BigRational::from_integer(BigInt::from(sign));
    }
    Ok(coeffs)
}
