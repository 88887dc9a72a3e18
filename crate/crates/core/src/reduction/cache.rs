//! On-disk cache of echelonized blocks.
//!
//! One JSON file per (algebra, N, slot, cutoff). Each file records a hash of
//! the configuration that produced it and a hash of its payload; a mismatch
//! of either is treated as a miss. Files are published by writing a
//! temporary file in the same directory and renaming it.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

const FORMAT: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockKey {
    pub algebra: String,
    pub size: usize,
    pub slot: (usize, usize),
    pub cutoff: u32,
}

impl BlockKey {
    pub fn file_name(&self) -> String {
        format!(
            "{}_N{}_k{}_l{}_w{}.json",
            self.algebra, self.size, self.slot.0, self.slot.1, self.cutoff
        )
    }

    pub fn config_hash(&self) -> String {
        sha256_hex(&format!(
            "format={FORMAT};algebra={};N={};k={};l={};cutoff={}",
            self.algebra, self.size, self.slot.0, self.slot.1, self.cutoff
        ))
    }
}

fn sha256_hex(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    format: u32,
    config_hash: String,
    payload_hash: String,
    payload: String,
}

/// What a cache lookup found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// The file belongs to a different configuration.
    Stale,
    /// The file could not be parsed or its payload hash did not match.
    Corrupt(String),
}

#[derive(Clone, Debug)]
pub struct BlockCache {
    dir: PathBuf,
}

impl BlockCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        Ok(BlockCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &BlockKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    /// Returns the payload when present and valid.
    pub fn load(&self, key: &BlockKey) -> (CacheOutcome, Option<String>) {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return (CacheOutcome::Miss, None),
            Err(e) => return (CacheOutcome::Corrupt(e.to_string()), None),
        };
        let env: Envelope = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => return (CacheOutcome::Corrupt(e.to_string()), None),
        };
        if env.format != FORMAT || env.config_hash != key.config_hash() {
            return (CacheOutcome::Stale, None);
        }
        if sha256_hex(&env.payload) != env.payload_hash {
            return (CacheOutcome::Corrupt("payload hash mismatch".into()), None);
        }
        (CacheOutcome::Hit, Some(env.payload))
    }

    /// Atomically publishes a payload.
    pub fn store(&self, key: &BlockKey, payload: String) -> Result<()> {
        let env = Envelope {
            format: FORMAT,
            config_hash: key.config_hash(),
            payload_hash: sha256_hex(&payload),
            payload,
        };
        let text = serde_json::to_string(&env).map_err(|e| Error::Invalid(e.to_string()))?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        tmp.write_all(text.as_bytes()).map_err(|e| Error::io(tmp.path(), e))?;
        let path = self.path(key);
        tmp.persist(&path).map_err(|e| Error::io(&path, e.error))?;
        Ok(())
    }
}
