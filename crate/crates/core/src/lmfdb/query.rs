use serde::Serialize;
use url::Url;

use crate::classifier::Signature;
use crate::permgroup::TransitiveLabel;

use super::LmfdbError;

/// Base URL used when `CMFIELD_LMFDB_URL` is unset.
pub const DEFAULT_BASE_URL: &str = "https://www.lmfdb.org";
/// Path of the number field collection below the base URL.
pub const COLLECTION_PATH: &str = "api/nf_fields/";
pub const MAX_PAGE_SIZE: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuerySpec {
    pub degree: usize,
    pub signature: Option<Signature>,
    pub galois_label: Option<TransitiveLabel>,
    pub cm: Option<bool>,
    pub max_abs_disc: Option<u64>,
    pub page_size: usize,
    pub offset: usize,
}

impl QuerySpec {
    pub fn new(degree: usize) -> Self {
        QuerySpec {
            degree,
            signature: None,
            galois_label: None,
            cm: None,
            max_abs_disc: None,
            page_size: 100,
            offset: 0,
        }
    }

    /// Totally imaginary fields of even degree `n`.
    pub fn totally_imaginary(degree: usize) -> Self {
        QuerySpec { signature: Some(Signature::new(0, degree / 2)), ..Self::new(degree) }
    }

    pub fn next_page(&self) -> Self {
        QuerySpec { offset: self.offset + self.page_size, ..self.clone() }
    }
}

pub fn base_url() -> String {
    std::env::var("CMFIELD_LMFDB_URL").unwrap_or_else(|_| DEFAULT_BASE_URL.to_string())
}

fn collection(base: &str) -> Result<Url, LmfdbError> {
    let mut base = base.to_string();
    if !base.ends_with('/') {
        base.push('/');
    }
    Url::parse(&base)
        .and_then(|u| u.join(COLLECTION_PATH))
        .map_err(|e| LmfdbError::Query(format!("bad base URL {base}: {e}")))
}

/// Request URL for `q` against `base`. Integer filters carry the API's `i` prefix, the
/// discriminant bound is a `py`-prefixed comparison, and the parameter order is fixed:
/// `_format, degree, r2, galois_label, cm, disc_abs, _limit, _offset`.
pub fn build_query_with_base(base: &str, q: &QuerySpec) -> Result<String, LmfdbError> {
    if q.page_size == 0 || q.page_size > MAX_PAGE_SIZE {
        return Err(LmfdbError::Query(format!("page size {} outside 1..={MAX_PAGE_SIZE}", q.page_size)));
    }
    if q.degree == 0 {
        return Err(LmfdbError::Query("degree must be positive".into()));
    }
    if let Some(s) = q.signature {
        if s.r1 + 2 * s.r2 != q.degree {
            return Err(LmfdbError::Query(format!("signature {s} does not match degree {}", q.degree)));
        }
    }
    if let Some(l) = q.galois_label {
        if l.degree != q.degree {
            return Err(LmfdbError::Query(format!("Galois label {l} does not match degree {}", q.degree)));
        }
    }
    if q.cm == Some(true) && (q.degree % 2 == 1 || q.signature.is_some_and(|s| s.r1 != 0)) {
        return Err(LmfdbError::Query("a CM field is totally imaginary of even degree".into()));
    }
    let mut url = collection(base)?;
    {
        let mut pairs = url.query_pairs_mut();
        pairs.append_pair("_format", "json");
        pairs.append_pair("degree", &format!("i{}", q.degree));
        if let Some(s) = q.signature {
            pairs.append_pair("r2", &format!("i{}", s.r2));
        }
        if let Some(l) = q.galois_label {
            pairs.append_pair("galois_label", &l.to_string());
        }
        if let Some(cm) = q.cm {
            pairs.append_pair("cm", if cm { "true" } else { "false" });
        }
        if let Some(x) = q.max_abs_disc {
            pairs.append_pair("disc_abs", &format!("py{{\"$lte\":{x}}}"));
        }
        pairs.append_pair("_limit", &q.page_size.to_string());
        pairs.append_pair("_offset", &q.offset.to_string());
    }
    Ok(url.into())
}

pub fn build_query(q: &QuerySpec) -> Result<String, LmfdbError> {
    build_query_with_base(&base_url(), q)
}

pub fn label_query_with_base(base: &str, label: &str) -> Result<String, LmfdbError> {
    let parts: Vec<&str> = label.split('.').collect();
    if parts.len() != 4 || parts.iter().any(|p| p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit())) {
        return Err(LmfdbError::Query(format!("not a field label: {label}")));
    }
    let mut url = collection(base)?;
    url.query_pairs_mut().append_pair("_format", "json").append_pair("label", label);
    Ok(url.into())
}

/// Single-record URL for a field label such as `6.0.14283.1`.
pub fn label_query(label: &str) -> Result<String, LmfdbError> {
    label_query_with_base(&base_url(), label)
}
