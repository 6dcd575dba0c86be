use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::{parse_jsonl, LmfdbError, LmfdbRecord};

/// Cache directory used when `CMFIELD_CACHE_DIR` is unset.
pub const DEFAULT_CACHE_DIR: &str = ".cmfield-cache";

/// JSON Lines cache keyed by the SHA-256 of the full request URL.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn from_env() -> Self {
        Cache::new(std::env::var_os("CMFIELD_CACHE_DIR").map(PathBuf::from).unwrap_or_else(|| DEFAULT_CACHE_DIR.into()))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, url: &str) -> PathBuf {
        self.dir.join(format!("{}.jsonl", hex::encode(Sha256::digest(url.as_bytes()))))
    }

    pub fn get(&self, url: &str) -> Result<Option<Vec<LmfdbRecord>>, LmfdbError> {
        let path = self.path_for(url);
        match fs::read_to_string(&path) {
            Ok(text) => Ok(Some(parse_jsonl(&text)?)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(LmfdbError::Io(format!("{}: {e}", path.display()))),
        }
    }

    /// Writes the records one per line, through a temporary file so readers never see a
    /// partial entry.
    pub fn put(&self, url: &str, records: &[LmfdbRecord]) -> Result<PathBuf, LmfdbError> {
        let io = |e: std::io::Error| LmfdbError::Io(format!("{}: {e}", self.dir.display()));
        fs::create_dir_all(&self.dir).map_err(io)?;
        let path = self.path_for(url);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        for r in records {
            let line = serde_json::to_string(r).expect("records serialise");
            writeln!(tmp, "{line}").map_err(io)?;
        }
        tmp.persist(&path).map_err(|e| io(e.error))?;
        Ok(path)
    }
}
