use std::thread::sleep;
use std::time::Duration;

use super::{
    build_query_with_base, label_query_with_base, parse_records, query::base_url, Cache, LmfdbError, LmfdbRecord,
    QuerySpec,
};

pub const RETRIES: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FetchOutcome {
    pub url: String,
    pub records: Vec<LmfdbRecord>,
    pub from_cache: bool,
    /// Rows dropped by the parser, with reasons.
    pub skipped: Vec<String>,
}

/// Database client. Network access happens only when `online` is set; otherwise every
/// request must be answered from the cache.
#[derive(Clone, Debug)]
pub struct Client {
    pub base_url: String,
    pub cache: Cache,
    pub online: bool,
    pub retries: u32,
    pub backoff: Duration,
    pub timeout: Duration,
}

impl Client {
    pub fn new(base_url: impl Into<String>, cache: Cache, online: bool) -> Self {
        Client {
            base_url: base_url.into(),
            cache,
            online,
            retries: RETRIES,
            backoff: Duration::from_millis(250),
            timeout: Duration::from_secs(30),
        }
    }

    /// Base URL and cache directory from `CMFIELD_LMFDB_URL` and `CMFIELD_CACHE_DIR`.
    pub fn from_env(online: bool) -> Self {
        Client::new(base_url(), Cache::from_env(), online)
    }

    pub fn fetch(&self, q: &QuerySpec) -> Result<FetchOutcome, LmfdbError> {
        self.fetch_url(&build_query_with_base(&self.base_url, q)?)
    }

    pub fn fetch_label(&self, label: &str) -> Result<FetchOutcome, LmfdbError> {
        self.fetch_url(&label_query_with_base(&self.base_url, label)?)
    }

    /// Follows `_offset` until a short page, stopping after `max_pages`.
    pub fn fetch_all(&self, q: &QuerySpec, max_pages: usize) -> Result<Vec<FetchOutcome>, LmfdbError> {
        let mut pages = Vec::new();
        let mut q = q.clone();
        for _ in 0..max_pages {
            let page = self.fetch(&q)?;
            let short = page.records.len() + page.skipped.len() < q.page_size;
            pages.push(page);
            if short {
                break;
            }
            q = q.next_page();
        }
        Ok(pages)
    }

    pub fn fetch_url(&self, url: &str) -> Result<FetchOutcome, LmfdbError> {
        if let Some(records) = self.cache.get(url)? {
            return Ok(FetchOutcome { url: url.to_string(), records, from_cache: true, skipped: Vec::new() });
        }
        if !self.online {
            return Err(LmfdbError::Offline(url.to_string()));
        }
        let body = self.get_with_retries(url)?;
        let parsed = parse_records(&body)?;
        self.cache.put(url, &parsed.records)?;
        Ok(FetchOutcome { url: url.to_string(), records: parsed.records, from_cache: false, skipped: parsed.skipped })
    }

    fn get_with_retries(&self, url: &str) -> Result<Vec<u8>, LmfdbError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(self.timeout)
            .user_agent(concat!("cmfield/", env!("CARGO_PKG_VERSION")))
            .build()
            .map_err(|e| LmfdbError::Network(e.to_string()))?;
        let mut last = String::new();
        for attempt in 0..=self.retries {
            if attempt > 0 {
                sleep(self.backoff * 2u32.pow(attempt - 1));
            }
            match client.get(url).send().and_then(|r| r.error_for_status()) {
                Ok(resp) => match resp.bytes() {
                    Ok(b) => return Ok(b.to_vec()),
                    Err(e) => last = e.to_string(),
                },
                Err(e) => last = e.to_string(),
            }
        }
        Err(LmfdbError::Network(format!("{url}: {last} (after {} retries)", self.retries)))
    }
}
