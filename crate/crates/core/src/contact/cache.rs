//! On-disk cache of interpolated contact classes.
//!
//! The file is a JSON object keyed by `"<canonical f>|<m>|<n>"`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motring::MotClass;
use crate::series::{bigints_to_json, json_to_bigints};

pub const CACHE_ENV: &str = "MOTZETA_CACHE_DIR";
pub const CACHE_FILE: &str = "contact_cache.json";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CacheEntry {
    pub num: serde_json::Value,
    pub den: serde_json::Value,
    pub primes: Vec<u64>,
    pub provenance: String,
}

impl CacheEntry {
    pub fn new(class: &MotClass, primes: &[u64], provenance: &str) -> CacheEntry {
        CacheEntry {
            num: bigints_to_json(class.num().coeffs()),
            den: bigints_to_json(class.den().coeffs()),
            primes: primes.to_vec(),
            provenance: provenance.to_string(),
        }
    }

    pub fn class(&self) -> Result<MotClass> {
        MotClass::from_coeff_lists(json_to_bigints(Some(&self.num))?, json_to_bigints(Some(&self.den))?)
    }
}

#[derive(Debug)]
pub struct ContactCache {
    path: PathBuf,
    entries: BTreeMap<String, CacheEntry>,
}

pub fn cache_key(f: &str, m: usize, n: usize) -> String {
    format!("{f}|{m}|{n}")
}

impl ContactCache {
    /// Opens (or starts) the cache at `path`.
    pub fn open(path: impl AsRef<Path>) -> Result<ContactCache> {
        let path = path.as_ref().to_path_buf();
        let entries = if path.exists() {
            let text = std::fs::read_to_string(&path)?;
            serde_json::from_str(&text)?
        } else {
            BTreeMap::new()
        };
        Ok(ContactCache { path, entries })
    }

    /// Cache named by an explicit directory, or by the environment variable.
    pub fn locate(dir: Option<&Path>) -> Result<Option<ContactCache>> {
        let dir = match dir {
            Some(d) => Some(d.to_path_buf()),
            None => std::env::var_os(CACHE_ENV).map(PathBuf::from),
        };
        match dir {
            Some(d) => {
                std::fs::create_dir_all(&d)?;
                Ok(Some(ContactCache::open(d.join(CACHE_FILE))?))
            }
            None => Ok(None),
        }
    }

    pub fn get(&self, key: &str) -> Option<&CacheEntry> {
        self.entries.get(key)
    }

    /// Stores a freshly computed class. An existing entry must hold the same class.
    pub fn record(&mut self, key: &str, entry: CacheEntry) -> Result<()> {
        if let Some(old) = self.entries.get(key) {
            if old.class()? != entry.class()? {
                return Err(Error::CacheMismatch(format!(
                    "{key}: cached {} but computed {}",
                    old.class()?,
                    entry.class()?
                )));
            }
            return Ok(());
        }
        self.entries.insert(key.to_string(), entry);
        self.save()
    }

    fn save(&self) -> Result<()> {
        let text = serde_json::to_string_pretty(&self.entries)?;
        let tmp = self.path.with_extension("json.tmp");
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, &self.path)?;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn persists_and_detects_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(CACHE_FILE);
        let class: MotClass = "2*L^3-2*L^2".parse().unwrap();
        let key = cache_key("x*y", 2, 2);
        {
            let mut c = ContactCache::open(&path).unwrap();
            c.record(&key, CacheEntry::new(&class, &[3, 5], "oracle")).unwrap();
        }
        let mut c = ContactCache::open(&path).unwrap();
        assert_eq!(c.get(&key).unwrap().class().unwrap(), class);
        c.record(&key, CacheEntry::new(&class, &[7], "oracle")).unwrap();
        let other: MotClass = "L".parse().unwrap();
        assert!(matches!(
            c.record(&key, CacheEntry::new(&other, &[3], "oracle")),
            Err(Error::CacheMismatch(_))
        ));
    }
}
