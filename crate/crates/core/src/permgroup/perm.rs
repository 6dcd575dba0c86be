use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::PermError;

/// A bijection of `{0, .., n-1}` stored as its image array.
///
/// Composition reads right to left: `(a * b)(i) = a(b(i))`, so
/// `g * x * g.inverse()` relabels the cycles of `x` by `g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u16>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Cycle lengths of a permutation, fixed points included, in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn parity(&self) -> Parity {
        if (self.degree() - self.parts.len()) % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_identity(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    pub fn identity(degree: usize) -> Self {
        CycleType { parts: vec![1; degree] }
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::InvalidPermutation("empty image array".into()));
        }
        if n > u16::MAX as usize {
            return Err(PermError::InvalidPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(PermError::InvalidPermutation(format!("{images:?} is not a bijection of 0..{n}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|i| i as u16).collect() })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u16).collect() }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2], &[3, 4]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree || touched[a] {
                    return Err(PermError::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint cycles on 0..{degree}"
                    )));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::new(images)
    }

    /// Parses cycle notation such as `(0 1 2)(3,4)`; `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self, PermError> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').and_then(|r| r.find(')').map(|end| (&r[..end], &r[end + 1..])));
            let Some((inner, tail)) = body else {
                return Err(PermError::InvalidPermutation(format!("bad cycle notation {text:?}")));
            };
            let points = inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| PermError::InvalidPermutation(format!("bad cycle notation {text:?}")))?;
            if points.len() > 1 {
                cycles.push(points);
            }
            rest = tail.trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&i| self.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    /// `g * self * g^-1`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u16; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[j as usize];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length > 1, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.image(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.image(next);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let moved: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        let fixed = self.degree() - moved.iter().sum::<usize>();
        let mut parts = moved;
        parts.extend(std::iter::repeat_n(1, fixed));
        CycleType::new(parts)
    }

    pub fn parity(&self) -> Parity {
        self.cycle_type().parity()
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &j)| i == j as usize).count()
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn cycle_type_of_triple_transposition() {
        let c = p(6, "(0 1)(2 3)(4 5)").cycle_type();
        assert_eq!(c.parts(), &[2, 2, 2]);
        assert_eq!(c.parity(), Parity::Odd);
    }

    #[test]
    fn cycle_type_of_identity() {
        let c = Permutation::identity(6).cycle_type();
        assert_eq!(c.parts(), &[1, 1, 1, 1, 1, 1]);
        assert_eq!(c.parity(), Parity::Even);
    }

    #[test]
    fn six_cycle_is_odd() {
        let c = p(6, "(0 1 2 3 4 5)").cycle_type();
        assert_eq!(c.parts(), &[6]);
        assert_eq!(c.parity(), Parity::Odd);
    }

    #[test]
    fn composition_is_right_to_left() {
        let a = p(3, "(0 1)");
        let b = p(3, "(1 2)");
        // b first: 1 -> 2 -> 2, then a fixes 2.
        assert_eq!((&a * &b).image(1), 2);
        assert_eq!((&a * &b).image(0), 1);
    }

    #[test]
    fn conjugation_relabels_cycles() {
        // (14)(13)(24)(14) = (12)(34) in 1-based notation.
        let g = p(4, "(0 3)");
        let x = p(4, "(0 2)(1 3)");
        assert_eq!(x.conjugate_by(&g), p(4, "(0 1)(2 3)"));
        assert_eq!(x.conjugate_by(&g), &(&g * &x) * &g.inverse());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_cycles(4, &[&[0, 1], &[1, 2]]).is_err());
        assert!(Permutation::parse_cycles(4, "(0 1").is_err());
    }

    #[test]
    fn order_and_pow() {
        let x = p(6, "(0 1 2)(3 4)");
        assert_eq!(x.order(), 6);
        assert!(x.pow(6).is_identity());
        assert!(!x.pow(3).is_identity());
    }

    #[test]
    fn display_round_trips() {
        let x = p(6, "(0 3 1 4)(2 5)");
        assert_eq!(x.to_string(), "(0 3 1 4)(2 5)");
        assert_eq!(Permutation::parse_cycles(6, &x.to_string()).unwrap(), x);
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }
}
