//! Shared per-level spaces, with an optional on-disk cache of Hecke matrices.
//!
//! Cache files are plain text, one per level, named
//! `modsym_N{level}_v{version}.txt`:
//!
//! ```text
//! hecke-modsym-cache 1
//! level 23
//! dim 5
//! plus_dim 2
//! hecke 2 2 2
//! -1 1
//! 1 0
//! end
//! ```
//!
//! Each `hecke n rows cols` block is followed by `rows` lines of
//! space-separated exact rationals (`p` or `p/q`). A file whose header or
//! dimensions disagree with the freshly built presentation is ignored.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use super::space::ModSymSpace;
use crate::exactlin::{RatMatrix, Rational};
use crate::error::{Error, Result};

pub const CACHE_FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "hecke-modsym-cache";

type Slot = Arc<OnceLock<std::result::Result<Arc<ModSymSpace>, Error>>>;

/// Builds each level at most once and hands out shared references.
#[derive(Default)]
pub struct SpaceStore {
    cache_dir: Option<PathBuf>,
    slots: Mutex<BTreeMap<u64, Slot>>,
}

impl SpaceStore {
    pub fn new(cache_dir: Option<PathBuf>) -> Self {
        SpaceStore { cache_dir, slots: Mutex::new(BTreeMap::new()) }
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    pub fn get(&self, n: u64) -> Result<Arc<ModSymSpace>> {
        let slot = self.slots.lock().expect("store poisoned").entry(n).or_default().clone();
        slot.get_or_init(|| {
            let space = ModSymSpace::new(n)?;
            if let Some(dir) = &self.cache_dir {
                let path = cache_path(dir, n);
                if path.exists() {
                    // stale or corrupt files are treated as a miss
                    let _ = load_into(&space, &fs::read_to_string(&path)?);
                }
            }
            Ok(Arc::new(space))
        })
        .clone()
    }

    /// Write every built level's cached matrices to the cache directory.
    pub fn persist(&self) -> Result<()> {
        let Some(dir) = &self.cache_dir else { return Ok(()) };
        fs::create_dir_all(dir)?;
        let slots: Vec<(u64, Slot)> =
            self.slots.lock().expect("store poisoned").iter().map(|(k, v)| (*k, v.clone())).collect();
        for (n, slot) in slots {
            if let Some(Ok(space)) = slot.get() {
                let tmp = dir.join(format!(".modsym_N{n}.tmp"));
                fs::write(&tmp, serialize(space))?;
                fs::rename(&tmp, cache_path(dir, n))?;
            }
        }
        Ok(())
    }
}

pub fn cache_path(dir: &Path, n: u64) -> PathBuf {
    dir.join(format!("modsym_N{n}_v{CACHE_FORMAT_VERSION}.txt"))
}

/// Text form of a space's cached Hecke matrices.
pub fn serialize(space: &ModSymSpace) -> String {
    let mut out = format!(
        "{MAGIC} {CACHE_FORMAT_VERSION}\nlevel {}\ndim {}\nplus_dim {}\n",
        space.level(),
        space.dim(),
        space.plus_dim()
    );
    for (n, m) in space.cached_hecke() {
        out += &format!("hecke {n} {} {}\n", m.rows(), m.cols());
        for i in 0..m.rows() {
            let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
            out += &row.join(" ");
            out.push('\n');
        }
    }
    out += "end\n";
    out
}

fn bad(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parse a cache file and seed `space` with its matrices.
pub fn load_into(space: &ModSymSpace, text: &str) -> Result<usize> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut expect = |key: &str, value: String| -> Result<()> {
        let (no, l) = lines.next().ok_or_else(|| bad(0, "truncated header"))?;
        if l != format!("{key} {value}") {
            return Err(bad(no, format!("expected `{key} {value}`, found `{l}`")));
        }
        Ok(())
    };
    expect(MAGIC, CACHE_FORMAT_VERSION.to_string())?;
    expect("level", space.level().to_string())?;
    expect("dim", space.dim().to_string())?;
    expect("plus_dim", space.plus_dim().to_string())?;
    let mut parsed = Vec::new();
    loop {
        let (no, l) = lines.next().ok_or_else(|| bad(0, "missing `end`"))?;
        if l == "end" {
            break;
        }
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 4 || f[0] != "hecke" {
            return Err(bad(no, "expected `hecke n rows cols`"));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|e| bad(no, e.to_string()));
        let (n, rows, cols) = (num(f[1])? as u64, num(f[2])?, num(f[3])?);
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (no, l) = lines.next().ok_or_else(|| bad(no, "truncated matrix"))?;
            let row: Vec<Rational> =
                l.split_whitespace().map(|t| t.parse::<Rational>().map_err(|e| bad(no, e.to_string()))).collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(bad(no, "wrong row length"));
            }
            data.extend(row);
        }
        parsed.push((n, RatMatrix::new(rows, cols, data)?));
    }
    let count = parsed.len();
    for (n, m) in parsed {
        space.insert_cached(n, m)?;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_text() {
        let s = ModSymSpace::new(23).unwrap();
        s.hecke_matrix(2).unwrap();
        s.hecke_matrix(3).unwrap();
        let text = serialize(&s);
        let fresh = ModSymSpace::new(23).unwrap();
        assert_eq!(load_into(&fresh, &text).unwrap(), 2);
        assert_eq!(fresh.cached_hecke(), s.cached_hecke());
        assert_eq!(serialize(&fresh), text);
    }

    #[test]
    fn mismatched_level_is_rejected() {
        let s = ModSymSpace::new(23).unwrap();
        let other = ModSymSpace::new(29).unwrap();
        assert!(load_into(&other, &serialize(&s)).is_err());
    }

    #[test]
    fn store_persists_and_reloads() {
        let dir = tempfile::tempdir().unwrap();
        let store = SpaceStore::new(Some(dir.path().to_path_buf()));
        let m = store.get(37).unwrap().hecke_matrix(2).unwrap();
        store.persist().unwrap();
        assert!(cache_path(dir.path(), 37).exists());
        let warm = SpaceStore::new(Some(dir.path().to_path_buf()));
        assert_eq!(warm.get(37).unwrap().cached_hecke().len(), 1);
        assert_eq!(warm.get(37).unwrap().hecke_matrix(2).unwrap(), m);
    }
}
