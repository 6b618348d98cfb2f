//! Shared store of computed zeta values with an optional disk image.
//!
//! The disk image is plain text, one record per line:
//! `index<TAB>digits<TAB>value`, e.g. `2,1\t40\t1.2020569031595942853997…`.
//! Lines starting with `#` are comments, except `# hits H misses M`,
//! which carries the lookup counters across runs.

use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use log::warn;

use crate::error::{MzvError, Result};
use crate::index::MultiIndex;
use crate::scalar::RealField;

#[derive(Clone, Debug)]
struct Entry<T> {
    digits: u32,
    value: T,
}

/// Hit and miss counters plus the current size.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub entries: usize,
    pub hits: u64,
    pub misses: u64,
}

impl CacheStats {
    pub fn hit_ratio(&self) -> f64 {
        let total = self.hits + self.misses;
        if total == 0 {
            0.0
        } else {
            self.hits as f64 / total as f64
        }
    }
}

/// Outcome of reading a disk image.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ImportSummary {
    pub loaded: usize,
    pub skipped: usize,
}

/// Map from index to the most precise value seen so far.
///
/// Readers share a lock; insertion takes it exclusively. Two workers that
/// miss on the same index both compute it and the second insert is a no-op
/// unless it carries more digits.
#[derive(Debug)]
pub struct ZetaCache<T> {
    entries: RwLock<HashMap<MultiIndex, Entry<T>>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl<T> Default for ZetaCache<T> {
    fn default() -> Self {
        ZetaCache {
            entries: RwLock::new(HashMap::new()),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }
}

impl<T: RealField> ZetaCache<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// A value with at least the digits of `ctx`, converted to `ctx`.
    pub fn get(&self, idx: &MultiIndex, ctx: &T::Context) -> Option<T> {
        let want = T::digits(ctx);
        let found = {
            let map = self.entries.read().expect("cache lock poisoned");
            map.get(idx).filter(|e| e.digits >= want).map(|e| {
                if e.value.context() == *ctx {
                    e.value.clone()
                } else {
                    e.value.convert_to(ctx)
                }
            })
        };
        let counter = if found.is_some() { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    pub fn insert(&self, idx: MultiIndex, value: T) {
        let digits = T::digits(&value.context());
        let mut map = self.entries.write().expect("cache lock poisoned");
        match map.get(&idx) {
            Some(e) if e.digits >= digits => {}
            _ => {
                map.insert(idx, Entry { digits, value });
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) {
        self.entries.write().expect("cache lock poisoned").clear();
        self.hits.store(0, Ordering::Relaxed);
        self.misses.store(0, Ordering::Relaxed);
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            entries: self.len(),
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    /// Writes every entry, sorted by weight then index.
    pub fn write_to<W: Write>(&self, out: W) -> Result<usize> {
        let mut out = BufWriter::new(out);
        let map = self.entries.read().expect("cache lock poisoned");
        let mut keys: Vec<&MultiIndex> = map.keys().collect();
        keys.sort_by(|a, b| (a.weight(), a.depth(), *a).cmp(&(b.weight(), b.depth(), *b)));
        writeln!(out, "# mzv zeta cache: index, digits, value")?;
        let stats = self.stats();
        writeln!(out, "# hits {} misses {}", stats.hits, stats.misses)?;
        for k in &keys {
            let e = &map[*k];
            writeln!(out, "{k}\t{}\t{}", e.digits, e.value.to_exact_string())?;
        }
        out.flush()?;
        Ok(keys.len())
    }

    /// Reads records, skipping (and logging) anything malformed.
    pub fn read_from<R: Read>(&self, input: R) -> Result<ImportSummary> {
        let mut summary = ImportSummary::default();
        for (lineno, line) in BufReader::new(input).lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if let Some((hits, misses)) = parse_counters(trimmed) {
                self.hits.fetch_add(hits, Ordering::Relaxed);
                self.misses.fetch_add(misses, Ordering::Relaxed);
                continue;
            }
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            match parse_record::<T>(trimmed) {
                Ok((idx, value)) => {
                    self.insert(idx, value);
                    summary.loaded += 1;
                }
                Err(e) => {
                    warn!("cache line {}: {e}; skipped", lineno + 1);
                    summary.skipped += 1;
                }
            }
        }
        Ok(summary)
    }

    /// Writes the image next to `path` and renames it into place.
    pub fn export(&self, path: &Path) -> Result<usize> {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        fs::create_dir_all(dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        let count = self.write_to(tmp.as_file_mut())?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| MzvError::Io(e.error.to_string()))?;
        Ok(count)
    }

    pub fn import(&self, path: &Path) -> Result<ImportSummary> {
        let file = fs::File::open(path)?;
        self.read_from(file)
    }
}

fn parse_counters(line: &str) -> Option<(u64, u64)> {
    let rest = line.strip_prefix("# hits ")?;
    let (hits, misses) = rest.split_once(" misses ")?;
    Some((hits.trim().parse().ok()?, misses.trim().parse().ok()?))
}

fn parse_record<T: RealField>(line: &str) -> Result<(MultiIndex, T)> {
    let fields: Vec<&str> = line.split('\t').collect();
    let [idx, digits, value] = fields[..] else {
        return Err(MzvError::Parse(format!("expected 3 fields, found {}", fields.len())));
    };
    let idx: MultiIndex = idx.parse()?;
    if !idx.is_admissible() {
        return Err(MzvError::NotAdmissible(idx.to_string()));
    }
    let digits: u32 = digits
        .trim()
        .parse()
        .map_err(|_| MzvError::Parse(format!("bad digit count {digits:?}")))?;
    let ctx = T::context_for_digits(digits)?;
    let value = T::parse_decimal(value, &ctx)?;
    Ok((idx, value))
}
