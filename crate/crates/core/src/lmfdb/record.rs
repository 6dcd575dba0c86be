use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::numfield::IntegerPolynomial;
use crate::permgroup::TransitiveLabel;

use super::LmfdbError;

/// One number field row, with the database's JSON field names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LmfdbRecord {
    pub label: String,
    #[serde(rename = "coeffs", deserialize_with = "big_list", serialize_with = "ser_big_list")]
    pub coefficients: Vec<BigInt>,
    pub degree: usize,
    pub r2: usize,
    pub galois_label: String,
    #[serde(rename = "cm")]
    pub is_cm: bool,
    #[serde(rename = "disc_abs", deserialize_with = "big", serialize_with = "ser_big")]
    pub abs_disc: BigInt,
    /// Defining polynomials of proper subfields other than `Q`, when the row carries them.
    #[serde(
        default,
        deserialize_with = "subfield_list",
        serialize_with = "ser_subfields",
        skip_serializing_if = "Option::is_none"
    )]
    pub subfields: Option<Vec<Vec<BigInt>>>,
    /// Where the row came from when it was not fetched from the database.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl LmfdbRecord {
    pub fn r1(&self) -> usize {
        self.degree.saturating_sub(2 * self.r2)
    }

    pub fn polynomial(&self) -> IntegerPolynomial {
        IntegerPolynomial::new(self.coefficients.clone())
    }

    pub fn transitive_label(&self) -> Result<TransitiveLabel, LmfdbError> {
        self.galois_label
            .parse()
            .map_err(|_| LmfdbError::Invariant(format!("{}: bad Galois label {}", self.label, self.galois_label)))
    }

    pub fn subfield_polynomials(&self) -> Option<Vec<IntegerPolynomial>> {
        self.subfields.as_ref().map(|s| s.iter().map(|c| IntegerPolynomial::new(c.clone())).collect())
    }

    /// `true` for rows fetched from the database rather than computed elsewhere.
    pub fn from_database(&self) -> bool {
        self.source.as_deref().is_none_or(|s| s == "lmfdb")
    }

    /// Checks the label against degree, signature and discriminant.
    pub fn validate(&self) -> Result<(), LmfdbError> {
        let bad = |why: String| Err(LmfdbError::Invariant(format!("{}: {why}", self.label)));
        if self.coefficients.len() != self.degree + 1 {
            return bad(format!("{} coefficients for degree {}", self.coefficients.len(), self.degree));
        }
        if 2 * self.r2 > self.degree {
            return bad(format!("r2 = {} exceeds half the degree", self.r2));
        }
        let parts: Vec<&str> = self.label.split('.').collect();
        let [n, r1, d, index] = parts.as_slice() else {
            return bad("label is not degree.r1.disc.index".into());
        };
        if index.parse::<u64>().is_err() {
            return bad("label index is not an integer".into());
        }
        if n.parse::<usize>().ok() != Some(self.degree) {
            return bad("label degree differs from the degree field".into());
        }
        if r1.parse::<usize>().ok() != Some(self.r1()) {
            return bad("label r1 differs from degree - 2 r2".into());
        }
        if d.parse::<BigInt>().ok().as_ref() != Some(&self.abs_disc) {
            return bad("label discriminant differs from disc_abs".into());
        }
        let label = self.transitive_label()?;
        if label.degree != self.degree {
            return bad(format!("Galois label {} has the wrong degree", self.galois_label));
        }
        Ok(())
    }
}

fn ser_big<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(n) {
        Ok(v) => s.serialize_i64(v),
        Err(_) => s.collect_str(n),
    }
}

struct List<'a>(&'a [BigInt]);

impl Serialize for List<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_big_list(self.0, s)
    }
}

fn ser_big_list<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    struct One<'a>(&'a BigInt);
    impl Serialize for One<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            ser_big(self.0, s)
        }
    }
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for n in v {
        seq.serialize_element(&One(n))?;
    }
    seq.end()
}

fn ser_subfields<S: Serializer>(v: &Option<Vec<Vec<BigInt>>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_seq(v.iter().map(|c| List(c))),
        None => s.serialize_none(),
    }
}

/// An integer given as a JSON number or a decimal string.
struct Big(BigInt);

impl<'de> Deserialize<'de> for Big {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Big;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Big, E> {
                Ok(Big(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Big, E> {
                Ok(Big(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Big, E> {
                v.trim().parse().map(Big).map_err(|_| E::custom(format!("not an integer: {v}")))
            }
        }
        d.deserialize_any(V)
    }
}

fn big<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    Big::deserialize(d).map(|b| b.0)
}

fn big_list<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    Vec::<Big>::deserialize(d).map(|v| v.into_iter().map(|b| b.0).collect())
}

/// Subfields as lists of coefficient lists, or as strings of comma- or dot-separated
/// coefficients.
fn subfield_list<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Vec<BigInt>>>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        List(Vec<Big>),
        Text(String),
    }
    let raw = Option::<Vec<Entry>>::deserialize(d)?;
    raw.map(|entries| {
        entries
            .into_iter()
            .map(|e| match e {
                Entry::List(v) => Ok(v.into_iter().map(|b| b.0).collect()),
                Entry::Text(s) => s
                    .split([',', '.'])
                    .map(|t| t.trim().parse::<BigInt>().map_err(|_| de::Error::custom(format!("bad subfield {s}"))))
                    .collect(),
            })
            .collect()
    })
    .transpose()
}
