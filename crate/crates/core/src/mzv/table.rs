//! MZV values with an optional on-disk cache.
//!
//! Cache format (JSON):
//!
//! ```text
//! { "format": "grtkit-mzv-cache", "version": 1,
//!   "entries": [ { "index": "1,2", "digits": 40, "value": "1.2020569...e0" } ] }
//! ```
//!
//! Values are decimal strings with a few digits beyond `digits`. Writers
//! merge with the current file and replace it atomically by renaming a
//! temporary file, so readers never see a partial file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mzv::eval::MzvEvaluator;
use crate::mzv::index::MzvIndex;
use crate::scalar::bigfloat::{bits_for_digits, BigFloat};
use crate::scalar::BigComplex;

const FORMAT: &str = "grtkit-mzv-cache";
const EXTRA_DIGITS: u32 = 5;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    version: u32,
    entries: Vec<CacheEntry>,
}

#[derive(Clone, Serialize, Deserialize)]
struct CacheEntry {
    index: MzvIndex,
    digits: u32,
    value: String,
}

/// Admissible MZVs at a fixed precision.
pub struct MzvTable {
    digits: u32,
    values: BTreeMap<MzvIndex, BigFloat>,
    evaluator: MzvEvaluator,
    cache: Option<PathBuf>,
    dirty: bool,
}

/// All admissible indices of weight exactly `w`.
pub fn admissible_indices(w: usize) -> Vec<MzvIndex> {
    fn compositions(n: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in 1..=n {
            prefix.push(k as u32);
            compositions(n - k, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    compositions(w, &mut Vec::new(), &mut all);
    all.into_iter().filter_map(|k| MzvIndex::new(k).ok()).filter(MzvIndex::is_admissible).collect()
}

impl MzvTable {
    pub fn new(digits: u32) -> Self {
        MzvTable { digits, values: BTreeMap::new(), evaluator: MzvEvaluator::new(digits), cache: None, dirty: false }
    }

    /// A table backed by `path`; entries computed at `digits` or more are
    /// reused.
    pub fn with_cache(digits: u32, path: &Path) -> Result<Self> {
        let mut t = MzvTable::new(digits);
        t.cache = Some(path.to_path_buf());
        if path.exists() {
            let bits = bits_for_digits(digits);
            for e in read_cache(path)? {
                if e.digits >= digits {
                    let v = BigFloat::parse(&e.value, bits)
                        .ok_or_else(|| Error::Parse(format!("bad cached value for zeta({})", e.index)))?;
                    t.values.insert(e.index, v);
                }
            }
        }
        Ok(t)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn real(&mut self, idx: &MzvIndex) -> Result<BigFloat> {
        if let Some(v) = self.values.get(idx) {
            return Ok(v.clone());
        }
        let v = self.evaluator.zeta_real(idx)?.with_prec(bits_for_digits(self.digits));
        self.values.insert(idx.clone(), v.clone());
        self.dirty = true;
        Ok(v)
    }

    pub fn value(&mut self, idx: &MzvIndex) -> Result<BigComplex> {
        Ok(BigComplex::from_real(self.real(idx)?, self.digits))
    }

    /// Computes every admissible MZV of weight at most `n`.
    pub fn fill_to_weight(&mut self, n: usize) -> Result<()> {
        for w in 2..=n {
            for idx in admissible_indices(w) {
                self.real(&idx)?;
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&MzvIndex, &BigFloat)> {
        self.values.iter()
    }

    /// Writes new values to the cache file, if any.
    pub fn save(&mut self) -> Result<()> {
        let Some(path) = self.cache.clone() else { return Ok(()) };
        if !self.dirty {
            return Ok(());
        }
        let mut merged: BTreeMap<MzvIndex, CacheEntry> = BTreeMap::new();
        if path.exists() {
            for e in read_cache(&path)? {
                merged.insert(e.index.clone(), e);
            }
        }
        for (idx, v) in &self.values {
            let keep = merged.get(idx).is_some_and(|e| e.digits >= self.digits);
            if !keep {
                merged.insert(
                    idx.clone(),
                    CacheEntry {
                        index: idx.clone(),
                        digits: self.digits,
                        value: v.to_decimal_string(self.digits + EXTRA_DIGITS),
                    },
                );
            }
        }
        let file = CacheFile { format: FORMAT.into(), version: 1, entries: merged.into_values().collect() };
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let tmp = dir.join(format!(
            ".{}.{}.tmp",
            path.file_name().and_then(|n| n.to_str()).unwrap_or("mzv-cache"),
            std::process::id()
        ));
        fs::write(&tmp, serde_json::to_vec_pretty(&file)?)?;
        fs::rename(&tmp, &path)?;
        self.dirty = false;
        Ok(())
    }
}

fn read_cache(path: &Path) -> Result<Vec<CacheEntry>> {
    let file: CacheFile = serde_json::from_slice(&fs::read(path)?)?;
    if file.format != FORMAT || file.version != 1 {
        return Err(Error::Parse(format!("{} is not a version 1 MZV cache", path.display())));
    }
    Ok(file.entries)
}
