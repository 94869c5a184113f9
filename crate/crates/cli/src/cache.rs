//! On-disk cache of computed tables and series.
//!
//! One JSON file per key. Each file records the key, a version tag and a
//! SHA-256 checksum of the payload; anything that does not match is
//! treated as a miss and recomputed.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const CACHE_VERSION: &str = concat!("qhodge-", env!("CARGO_PKG_VERSION"), "/1");

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O error at {}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub version: String,
    pub checksum: String,
    pub payload: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit(String),
    Miss,
    Stale { found: String },
    Corrupt(String),
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    version: String,
}

pub fn checksum(payload: &str) -> String {
    hex::encode(Sha256::digest(payload.as_bytes()))
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir, version: CACHE_VERSION.to_string() }
    }

    pub fn with_version(dir: PathBuf, version: impl Into<String>) -> Self {
        Cache { dir, version: version.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Key for a pipeline id and its parameters, order-sensitive.
    pub fn key(pipeline: &str, params: &[(&str, String)]) -> String {
        let mut h = Sha256::new();
        h.update(pipeline.as_bytes());
        for (k, v) in params {
            h.update(b"\x1f");
            h.update(k.as_bytes());
            h.update(b"=");
            h.update(v.as_bytes());
        }
        hex::encode(h.finalize())
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn store(&self, key: &str, payload: &str) -> Result<(), CacheError> {
        let io_err = |path: &Path| {
            let path = path.to_path_buf();
            move |source| CacheError::Io { path, source }
        };
        fs::create_dir_all(&self.dir).map_err(io_err(&self.dir))?;
        let entry = CacheEntry {
            key: key.to_string(),
            version: self.version.clone(),
            checksum: checksum(payload),
            payload: payload.to_string(),
        };
        let text = serde_json::to_string(&entry).expect("cache entry serializes");
        let path = self.path_for(key);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text).map_err(io_err(&tmp))?;
        fs::rename(&tmp, &path).map_err(io_err(&path))
    }

    pub fn load(&self, key: &str) -> Result<Lookup, CacheError> {
        let path = self.path_for(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Lookup::Miss),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        let entry: CacheEntry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => return Ok(Lookup::Corrupt(format!("unreadable entry: {e}"))),
        };
        if entry.version != self.version {
            return Ok(Lookup::Stale { found: entry.version });
        }
        if entry.key != key {
            return Ok(Lookup::Corrupt("key mismatch".into()));
        }
        if checksum(&entry.payload) != entry.checksum {
            return Ok(Lookup::Corrupt("checksum mismatch".into()));
        }
        Ok(Lookup::Hit(entry.payload))
    }
}
