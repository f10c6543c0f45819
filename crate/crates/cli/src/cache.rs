//! Content-addressed result cache: one JSON file per request, named by the
//! SHA-256 of the canonical request.

use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliResult;
use crate::payload::Payload;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    version: String,
    request: Value,
    payload: Payload,
}

pub struct Cache {
    dir: Option<PathBuf>,
    refresh: bool,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>, refresh: bool) -> Self {
        Cache { dir, refresh }
    }

    pub fn fingerprint(request: &Value) -> String {
        let canonical = serde_json::to_string(&(VERSION, request)).expect("values serialize");
        format!("{:x}", Sha256::digest(canonical.as_bytes()))
    }

    /// Returns the cached payload for `request`, or computes and stores it.
    pub fn get_or_compute(
        &self,
        request: Value,
        compute: impl FnOnce() -> CliResult<Payload>,
    ) -> CliResult<Payload> {
        let Some(dir) = &self.dir else {
            return compute();
        };
        let path = dir.join(format!("{}.json", Self::fingerprint(&request)));
        if !self.refresh {
            if let Some(entry) = fs::read(&path)
                .ok()
                .and_then(|bytes| serde_json::from_slice::<CacheEntry>(&bytes).ok())
            {
                if entry.version == VERSION && entry.request == request {
                    return Ok(entry.payload);
                }
            }
        }
        let payload = compute()?;
        fs::create_dir_all(dir)?;
        let entry = CacheEntry {
            version: VERSION.into(),
            request,
            payload,
        };
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec_pretty(&entry)?)?;
        fs::rename(tmp, &path)?;
        Ok(entry.payload)
    }
}
