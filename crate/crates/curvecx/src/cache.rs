//! On-disk cache of slices, keyed by triangulation, weight bound and kind.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::complexes::{ComplexSlice, Kind};
use crate::error::{Error, Result};
use crate::surface::Triangulation;

pub const CACHE_VERSION: &str = "curves-v1";

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    triangulation: String,
    weight: u32,
    kind: Kind,
    slice: ComplexSlice,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, t: &Triangulation, weight: u32, kind: Kind) -> PathBuf {
        let h = t.hash();
        self.dir.join(format!("{}-w{weight}-{kind:?}.json", &h[..16.min(h.len())]))
    }

    /// Reads a cached slice. Entries written by another version are refused.
    pub fn load(&self, t: &Triangulation, weight: u32, kind: Kind) -> Result<Option<ComplexSlice>> {
        let path = self.path(t, weight, kind);
        let text = match fs::read_to_string(&path) {
            Ok(s) => s,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
        };
        let head: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        let version = head.get("version").and_then(|v| v.as_str()).unwrap_or("");
        if version != CACHE_VERSION {
            return Err(Error::Cache(format!(
                "{} has version {version:?}, expected {CACHE_VERSION:?}; remove it to rebuild",
                path.display()
            )));
        }
        let entry: Entry = serde_json::from_value(head).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        if entry.triangulation != t.hash() || entry.weight != weight || entry.kind != kind {
            return Err(Error::Cache(format!("{} was written for a different key", path.display())));
        }
        let mut slice = entry.slice;
        slice.rehydrate(t)?;
        Ok(Some(slice))
    }

    pub fn store(&self, t: &Triangulation, weight: u32, slice: &ComplexSlice) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::Cache(format!("{}: {e}", self.dir.display())))?;
        let entry = Entry {
            version: CACHE_VERSION.into(),
            triangulation: t.hash(),
            weight,
            kind: slice.kind,
            slice: slice.clone(),
        };
        let path = self.path(t, weight, slice.kind);
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string(&entry).expect("serializable");
        fs::write(&tmp, text).map_err(|e| Error::Cache(format!("{}: {e}", tmp.display())))?;
        fs::rename(&tmp, &path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }
}

/// Builds a slice, going through the cache when one is given.
pub fn slice(cache: Option<&Cache>, t: &Triangulation, weight: u32, kind: Kind) -> Result<ComplexSlice> {
    if let Some(c) = cache {
        if let Some(s) = c.load(t, weight, kind)? {
            return Ok(s);
        }
    }
    let s = ComplexSlice::build(t, weight, kind)?;
    if let Some(c) = cache {
        c.store(t, weight, &s)?;
    }
    Ok(s)
}
