//! On-disk character table cache, keyed by a hash of the group description.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::chtab::{compute_table, export_table, ingest_table, CharTable};
use crate::error::{Error, Result};
use crate::grp::Group;

pub const CACHE_DIR_ENV: &str = "ANCHORKIT_CACHE_DIR";

/// `$ANCHORKIT_CACHE_DIR`, else `anchorkit-cache` in the system temp dir.
pub fn default_cache_dir() -> PathBuf {
    match std::env::var_os(CACHE_DIR_ENV) {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => std::env::temp_dir().join("anchorkit-cache"),
    }
}

/// Hex SHA-256 of the canonical JSON of the group spec.
pub fn group_hash(g: &Group) -> String {
    let spec = serde_json::to_string(&g.spec()).expect("group spec serializes");
    hex::encode(Sha256::digest(spec.as_bytes()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableSource {
    Cache,
    Computed,
}

#[derive(Clone, Debug)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, g: &Group) -> PathBuf {
        self.dir.join(format!("{}.table.json", group_hash(g)))
    }

    /// Loads the cached table when present and valid; otherwise computes and
    /// stores it. A cached file that fails verification is replaced.
    pub fn load_or_compute(&self, g: &Group) -> Result<(CharTable, TableSource)> {
        let path = self.path_for(g);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(t) = ingest_table(g, &text) {
                return Ok((t, TableSource::Cache));
            }
        }
        let t = compute_table(g)?;
        self.store(&path, &export_table(&t))?;
        Ok((t, TableSource::Computed))
    }

    fn store(&self, path: &Path, text: &str) -> Result<()> {
        let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
        fs::create_dir_all(&self.dir).map_err(io)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        tmp.write_all(text.as_bytes()).map_err(io)?;
        tmp.as_file().sync_all().map_err(io)?;
        tmp.persist(path).map_err(|e| io(e.error))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::group_from_generators;

    #[test]
    fn second_load_hits_cache_with_same_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path().join("nested"));
        let g = group_from_generators("S3", 3, &[vec![2, 1, 3], vec![2, 3, 1]]).unwrap();
        let (t1, s1) = cache.load_or_compute(&g).unwrap();
        let bytes1 = fs::read(cache.path_for(&g)).unwrap();
        let (t2, s2) = cache.load_or_compute(&g).unwrap();
        assert_eq!((s1, s2), (TableSource::Computed, TableSource::Cache));
        assert_eq!(export_table(&t1), export_table(&t2));
        fs::write(cache.path_for(&g), "{not json").unwrap();
        let (_, s3) = cache.load_or_compute(&g).unwrap();
        assert_eq!(s3, TableSource::Computed);
        assert_eq!(fs::read(cache.path_for(&g)).unwrap(), bytes1);
    }
}
