//! Number field database client: query construction, response parsing, a JSON Lines
//! cache, the committed offline corpus and cross-validation of verdicts.
//!
//! Nothing here touches the network unless a [`Client`] is built with `online = true`.

mod cache;
mod client;
mod query;
mod record;
mod validate;

use serde::Deserialize;
use thiserror::Error;

pub use cache::{Cache, DEFAULT_CACHE_DIR};
pub use client::{Client, FetchOutcome, RETRIES};
pub use query::{
    base_url, build_query, build_query_with_base, label_query, label_query_with_base, QuerySpec, COLLECTION_PATH,
    DEFAULT_BASE_URL, MAX_PAGE_SIZE,
};
pub use record::LmfdbRecord;
pub use validate::{census_entries, cross_validate, LabelSummary, ValidationEntry, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LmfdbError {
    #[error("malformed response: {0}")]
    Malformed(String),
    #[error("record invariant violated: {0}")]
    Invariant(String),
    #[error("bad query: {0}")]
    Query(String),
    #[error("offline and not cached: {0}")]
    Offline(String),
    #[error("network: {0}")]
    Network(String),
    #[error("io: {0}")]
    Io(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParseOutcome {
    pub records: Vec<LmfdbRecord>,
    /// One message per skipped row.
    pub skipped: Vec<String>,
}

#[derive(Deserialize)]
struct Payload {
    data: Vec<serde_json::Value>,
}

/// Parses an API response `{"data": [...]}`. Rows that fail to decode or violate a record
/// invariant are skipped and reported; unknown fields are ignored.
pub fn parse_records(payload: &[u8]) -> Result<ParseOutcome, LmfdbError> {
    let payload: Payload = serde_json::from_slice(payload).map_err(|e| LmfdbError::Malformed(e.to_string()))?;
    let mut out = ParseOutcome::default();
    for (i, row) in payload.data.into_iter().enumerate() {
        match serde_json::from_value::<LmfdbRecord>(row).map_err(|e| LmfdbError::Malformed(e.to_string())) {
            Ok(r) => match r.validate() {
                Ok(()) => out.records.push(r),
                Err(e) => out.skipped.push(format!("row {i}: {e}")),
            },
            Err(e) => out.skipped.push(format!("row {i}: {e}")),
        }
    }
    Ok(out)
}

/// Reads cache lines. Every line must be a valid record, since the cache only holds
/// records that already passed [`parse_records`].
pub fn parse_jsonl(text: &str) -> Result<Vec<LmfdbRecord>, LmfdbError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| {
            let r: LmfdbRecord =
                serde_json::from_str(l).map_err(|e| LmfdbError::Malformed(format!("cache line {}: {e}", i + 1)))?;
            r.validate()?;
            Ok(r)
        })
        .collect()
}

/// The committed corpus, compiled into the library so offline runs need no files.
pub mod fixtures {
    use super::{parse_records, LmfdbRecord};

    pub const NAMED: &str = include_str!("../../fixtures/lmfdb/named.json");
    pub const SEXTICS: &str = include_str!("../../fixtures/lmfdb/sextics.json");
    pub const QUARTICS: &str = include_str!("../../fixtures/lmfdb/quartics.json");
    /// Largest absolute discriminant covered by the quartic slice.
    pub const QUARTIC_XMAX: u64 = 6000;

    fn load(text: &str) -> Vec<LmfdbRecord> {
        let parsed = parse_records(text.as_bytes()).expect("committed fixtures parse");
        assert!(parsed.skipped.is_empty(), "committed fixtures contain invalid rows: {:?}", parsed.skipped);
        parsed.records
    }

    /// Fields named in the literature on this classification.
    pub fn named() -> Vec<LmfdbRecord> {
        load(NAMED)
    }

    pub fn sextics() -> Vec<LmfdbRecord> {
        load(SEXTICS)
    }

    pub fn quartics() -> Vec<LmfdbRecord> {
        load(QUARTICS)
    }

    pub fn by_label(label: &str) -> Option<LmfdbRecord> {
        named().into_iter().chain(sextics()).chain(quartics()).find(|r| r.label == label)
    }
}
