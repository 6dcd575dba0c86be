//! Quartic density computation and empirical CM-type ratios.
//!
//! The published densities are 5-digit decimals, so they are stored as exact rationals
//! and every posterior is computed exactly. Rounding happens only for display.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::classifier::FieldType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("not a decimal number: {0}")]
    Decimal(String),
    #[error("{name} = {value} is not a probability")]
    NotProbability { name: &'static str, value: String },
    #[error("p_D4 + p_S4 = {0}, expected 1")]
    NotNormalised(String),
    #[error("zero denominator: the totally imaginary event has probability 0")]
    ZeroDenominator,
    #[error("records of degree {found} in a degree {expected} census")]
    MixedDegree { expected: usize, found: usize },
    #[error("field with real places in a totally imaginary census: {0}")]
    NotTotallyImaginary(String),
    #[error(transparent)]
    Csv(#[from] CsvError),
}

/// Wrapper so the error type stays `Clone + PartialEq`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("csv: {0}")]
pub struct CsvError(String);

/// Parses a decimal string such as `0.17111` or `-2.5e-3` exactly.
pub fn parse_decimal(s: &str) -> Result<BigRational, CensusError> {
    let err = || CensusError::Decimal(s.to_string());
    let t = s.trim();
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars())).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let n: BigInt = format!("0{int}{frac}").parse().map_err(|_| err())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut q = BigRational::from_integer(n);
    if scale >= 0 {
        q *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        q /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -q } else { q })
}

/// `x` rounded half-to-even to `digits` decimal places, as a fixed-point string.
pub fn round_half_even(x: &BigRational, digits: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits as usize);
    let scaled = x * BigRational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let frac = &scaled - BigRational::from_integer(floor.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let n = match frac.cmp(&half) {
        std::cmp::Ordering::Less => floor,
        std::cmp::Ordering::Greater => floor + 1,
        std::cmp::Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    };
    let neg = n.is_negative();
    let digits_str = n.abs().to_string();
    let d = digits as usize;
    let padded = format!("{:0>width$}", digits_str, width = d + 1);
    let (i, f) = padded.split_at(padded.len() - d);
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{i}")
    } else {
        format!("{sign}{i}.{f}")
    }
}

fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(q)
}

fn ser_opt_rational<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.collect_str(q),
        None => s.serialize_none(),
    }
}

/// Asymptotic densities among quartic fields ordered by absolute discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticDensities {
    #[serde(serialize_with = "ser_rational")]
    pub p_d4: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub p_s4: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub p_ti_given_s4: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub p_ti_given_d4: BigRational,
}

impl QuarticDensities {
    /// Bhargava's `P(D4) = 0.17111`, `P(S4) = 0.82889` and `30%` totally imaginary `S4`
    /// quartics; Cohen, Diaz y Diaz and Olivier's `71.747%` totally imaginary `D4` quartics.
    pub fn published() -> Self {
        Self::from_decimals("0.17111", "0.82889", "0.30", "0.71747").expect("published constants are valid")
    }

    pub fn new(
        p_d4: BigRational,
        p_s4: BigRational,
        p_ti_given_s4: BigRational,
        p_ti_given_d4: BigRational,
    ) -> Result<Self, CensusError> {
        for (name, v) in [("p_D4", &p_d4), ("p_S4", &p_s4), ("p_TI|S4", &p_ti_given_s4), ("p_TI|D4", &p_ti_given_d4)] {
            if v.is_negative() || v > &BigRational::one() {
                return Err(CensusError::NotProbability { name, value: v.to_string() });
            }
        }
        let sum = &p_d4 + &p_s4;
        let tol = BigRational::new(BigInt::one(), BigInt::from(1_000_000_000));
        if (&sum - BigRational::one()).abs() > tol {
            return Err(CensusError::NotNormalised(sum.to_string()));
        }
        Ok(QuarticDensities { p_d4, p_s4, p_ti_given_s4, p_ti_given_d4 })
    }

    pub fn from_decimals(
        p_d4: &str,
        p_s4: &str,
        p_ti_given_s4: &str,
        p_ti_given_d4: &str,
    ) -> Result<Self, CensusError> {
        Self::new(
            parse_decimal(p_d4)?,
            parse_decimal(p_s4)?,
            parse_decimal(p_ti_given_s4)?,
            parse_decimal(p_ti_given_d4)?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BayesResult {
    /// Probability that a totally imaginary quartic field has group `S4` (so is TR-type).
    #[serde(serialize_with = "ser_rational")]
    pub p_s4_given_ti: BigRational,
    /// The complementary CM-type proportion.
    #[serde(serialize_with = "ser_rational")]
    pub p_cm: BigRational,
}

impl BayesResult {
    pub fn rounded(&self, digits: u32) -> (String, String) {
        (round_half_even(&self.p_s4_given_ti, digits), round_half_even(&self.p_cm, digits))
    }
}

/// `P(S4 | TI)` by Bayes' theorem; the `C4` and `V4` quartics have density zero.
pub fn bayes_posterior(d: &QuarticDensities) -> Result<BayesResult, CensusError> {
    let s = &d.p_ti_given_s4 * &d.p_s4;
    let total = &s + &d.p_ti_given_d4 * &d.p_d4;
    if total.is_zero() {
        return Err(CensusError::ZeroDenominator);
    }
    let p_s4_given_ti = s / total;
    let p_cm = BigRational::one() - &p_s4_given_ti;
    Ok(BayesResult { p_s4_given_ti, p_cm })
}

/// A classified field, as consumed by the census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub degree: usize,
    pub r1: usize,
    pub abs_disc: BigInt,
    pub category: FieldType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusCounts {
    pub bound: u64,
    pub n_ti: usize,
    pub n_cm: usize,
    /// `n_cm / n_ti`; `None` when no field lies below the bound.
    #[serde(serialize_with = "ser_opt_rational")]
    pub ratio: Option<BigRational>,
}

impl CensusCounts {
    pub fn ratio_f64(&self) -> Option<f64> {
        self.ratio.as_ref().and_then(|q| q.to_f64())
    }
}

impl fmt::Display for CensusCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.ratio {
            Some(r) => write!(f, "X = {}: {} / {} = {}", self.bound, self.n_cm, self.n_ti, round_half_even(r, 5)),
            None => write!(f, "X = {}: no fields, ratio undefined", self.bound),
        }
    }
}

/// Counts of totally imaginary fields with `|disc| <= X` and of the CM-type ones among them.
pub fn empirical_ratio(entries: &[CensusEntry], x_grid: &[u64]) -> Result<Vec<CensusCounts>, CensusError> {
    if let Some(first) = entries.first() {
        for e in entries {
            if e.degree != first.degree {
                return Err(CensusError::MixedDegree { expected: first.degree, found: e.degree });
            }
            if e.r1 != 0 {
                return Err(CensusError::NotTotallyImaginary(e.abs_disc.to_string()));
            }
        }
    }
    let mut grid = x_grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    Ok(grid
        .into_iter()
        .map(|bound| {
            let x = BigInt::from(bound);
            let below: Vec<&CensusEntry> = entries.iter().filter(|e| e.abs_disc <= x).collect();
            let n_ti = below.len();
            let n_cm = below.iter().filter(|e| e.category != FieldType::TrType).count();
            let ratio = (n_ti > 0).then(|| BigRational::new(BigInt::from(n_cm), BigInt::from(n_ti)));
            CensusCounts { bound, n_ti, n_cm, ratio }
        })
        .collect())
}

/// CSV with header `X,n_TI,n_CM,ratio`; undefined ratios are left empty.
pub fn to_csv(counts: &[CensusCounts]) -> Result<String, CensusError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let wrap = |e: csv::Error| CensusError::Csv(CsvError(e.to_string()));
    w.write_record(["X", "n_TI", "n_CM", "ratio"]).map_err(wrap)?;
    for c in counts {
        let ratio = c.ratio.as_ref().map(|r| round_half_even(r, 5)).unwrap_or_default();
        w.write_record([c.bound.to_string(), c.n_ti.to_string(), c.n_cm.to_string(), ratio]).map_err(wrap)?;
    }
    let bytes = w.into_inner().map_err(|e| CensusError::Csv(CsvError(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Where the largest-bound ratio sits relative to the asymptotic CM-type proportion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Above,
    Below,
    Equal,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusSummary {
    pub degree: usize,
    pub counts: Vec<CensusCounts>,
    /// Asymptotic CM-type proportion, known only for quartic fields.
    pub asymptotic_cm: Option<String>,
    pub largest_bound_ratio: Option<String>,
    pub direction: Option<Direction>,
    /// `true` when the ratio at the largest bound is no farther from the limit than the
    /// ratio at the smallest bound with data.
    pub approaching: Option<bool>,
    pub note: &'static str,
}

pub const EMPIRICAL_NOTE: &str =
    "empirical counts over the available records only; finite-X ratios are not asymptotic densities";

pub fn summarize(degree: usize, counts: Vec<CensusCounts>) -> CensusSummary {
    let limit =
        (degree == 4).then(|| bayes_posterior(&QuarticDensities::published()).expect("published constants").p_cm);
    let defined: Vec<&BigRational> = counts.iter().filter_map(|c| c.ratio.as_ref()).collect();
    let last = defined.last().copied();
    let direction = match (last, &limit) {
        (Some(r), Some(l)) => Some(match r.cmp(l) {
            std::cmp::Ordering::Greater => Direction::Above,
            std::cmp::Ordering::Less => Direction::Below,
            std::cmp::Ordering::Equal => Direction::Equal,
        }),
        _ => None,
    };
    let approaching = match (defined.first(), last, &limit) {
        (Some(first), Some(last), Some(l)) => Some((last - l).abs() <= (*first - l).abs()),
        _ => None,
    };
    CensusSummary {
        degree,
        largest_bound_ratio: last.map(|r| round_half_even(r, 5)),
        asymptotic_cm: limit.as_ref().map(|l| round_half_even(l, 5)),
        direction,
        approaching,
        counts,
        note: EMPIRICAL_NOTE,
    }
}

impl FromStr for QuarticDensities {
    type Err = CensusError;

    /// Four comma-separated decimals `p_D4,p_S4,p_TI|S4,p_TI|D4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').collect();
        match parts.as_slice() {
            [a, b, c, d] => Self::from_decimals(a, b, c, d),
            _ => Err(CensusError::Decimal(s.to_string())),
        }
    }
}
