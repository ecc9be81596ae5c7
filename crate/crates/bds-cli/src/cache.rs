//! Content-addressed result cache. An entry is a JSON file named by the
//! SHA-256 of (cache schema, datum fingerprint, operation, canonical
//! argument string). Writes go to a process-unique sibling and are renamed
//! into place, so concurrent writers of the same key cannot interleave and
//! readers never observe a partial file. Entries that fail to read or parse
//! are treated as absent and recomputed; the cache never changes results,
//! only whether they are recomputed.

use std::fs;
use std::path::PathBuf;

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Part of every key; bump to orphan all previously written entries.
pub const CACHE_SCHEMA: &str = "bds-cache/1";

pub struct Cache {
    root: Option<PathBuf>,
}

impl Cache {
    /// Resolve from the environment: BDS_CACHE_DIR overrides the location,
    /// BDS_NO_CACHE=1 disables persistence, and with neither set the cache
    /// lives under XDG_CACHE_HOME/bds (or ~/.cache/bds).
    pub fn from_env() -> Cache {
        let off = std::env::var("BDS_NO_CACHE")
            .map(|v| v == "1" || v.eq_ignore_ascii_case("true"))
            .unwrap_or(false);
        if off {
            return Cache::disabled();
        }
        if let Ok(dir) = std::env::var("BDS_CACHE_DIR") {
            if !dir.is_empty() {
                return Cache {
                    root: Some(PathBuf::from(dir)),
                };
            }
        }
        let base = std::env::var("XDG_CACHE_HOME")
            .ok()
            .filter(|s| !s.is_empty())
            .map(PathBuf::from)
            .or_else(|| {
                std::env::var("HOME")
                    .ok()
                    .filter(|s| !s.is_empty())
                    .map(|h| PathBuf::from(h).join(".cache"))
            });
        Cache {
            root: base.map(|b| b.join("bds")),
        }
    }

    pub fn disabled() -> Cache {
        Cache { root: None }
    }

    fn path(&self, op: &str, fingerprint: &str, args: &str) -> Option<PathBuf> {
        let root = self.root.as_ref()?;
        let mut h = Sha256::new();
        for part in [CACHE_SCHEMA, fingerprint, op, args] {
            h.update(part.as_bytes());
            h.update([0]);
        }
        let hex = format!("{:x}", h.finalize());
        Some(root.join(op).join(format!("{hex}.json")))
    }

    pub fn load<T: DeserializeOwned>(&self, op: &str, fingerprint: &str, args: &str) -> Option<T> {
        let p = self.path(op, fingerprint, args)?;
        let bytes = fs::read(p).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    /// Best effort: any I/O failure silently leaves the entry unwritten.
    pub fn store<T: Serialize>(&self, op: &str, fingerprint: &str, args: &str, value: &T) {
        let Some(p) = self.path(op, fingerprint, args) else {
            return;
        };
        let Some(dir) = p.parent() else { return };
        if fs::create_dir_all(dir).is_err() {
            return;
        }
        let Ok(bytes) = serde_json::to_vec(value) else {
            return;
        };
        let name = p.file_name().expect("cache paths end in a file name");
        let tmp = dir.join(format!(
            ".{}.tmp{}",
            name.to_string_lossy(),
            std::process::id()
        ));
        if fs::write(&tmp, &bytes).is_ok() && fs::rename(&tmp, &p).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }
}
