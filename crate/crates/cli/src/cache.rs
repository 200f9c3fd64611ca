//! On-disk cache of Weyl divisor catalogs, one JSON file per `(n, s)` with
//! a SHA-256 digest of its contents.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use weyl_cycles::weyl::{weyl_divisor_orbit, WeylDivisorCatalog, WeylSpace};
use weyl_cycles::DivisorClass;

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    n: usize,
    s: usize,
    sha256: String,
    classes: Vec<DivisorClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    /// Built and written.
    Stored,
    /// The file failed its integrity check and was rebuilt.
    Replaced,
}

fn digest(n: usize, s: usize, classes: &[DivisorClass]) -> String {
    let body = serde_json::to_vec(&(n, s, classes)).expect("classes serialize");
    hex::encode(Sha256::digest(&body))
}

pub fn cache_path(dir: &Path, n: usize, s: usize) -> PathBuf {
    dir.join(format!("weyl-divisors-n{n}-s{s}.json"))
}

fn read(path: &Path, n: usize, s: usize) -> Option<WeylDivisorCatalog> {
    let text = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.n != n || file.s != s || file.sha256 != digest(n, s, &file.classes) {
        return None;
    }
    WeylDivisorCatalog::from_classes(n, s, file.classes).ok()
}

fn write(path: &Path, catalog: &WeylDivisorCatalog) -> Result<()> {
    let (n, s) = (catalog.n(), catalog.s());
    let classes = catalog.classes().to_vec();
    let file = CacheFile { n, s, sha256: digest(n, s, &classes), classes };
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_vec(&file)?).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// The catalog for `(n, s)`, from the cache when it is intact.
pub fn load_catalog(dir: Option<&Path>, n: usize, s: usize) -> Result<(WeylDivisorCatalog, CacheStatus)> {
    let Some(dir) = dir else {
        return Ok((weyl_divisor_orbit(n, s)?, CacheStatus::Disabled));
    };
    let path = cache_path(dir, n, s);
    let existed = path.exists();
    if let Some(catalog) = read(&path, n, s) {
        return Ok((catalog, CacheStatus::Hit));
    }
    let catalog = weyl_divisor_orbit(n, s)?;
    write(&path, &catalog)?;
    Ok((catalog, if existed { CacheStatus::Replaced } else { CacheStatus::Stored }))
}

/// Loads the catalog through the cache and installs it as the shared space
/// when `(n, s)` is one of the supported ambients.
pub fn prepare(dir: Option<&Path>, n: usize, s: usize) -> Result<CacheStatus> {
    if !matches!((n, s), (3, 7) | (4, 8)) {
        return Ok(CacheStatus::Disabled);
    }
    let (catalog, status) = load_catalog(dir, n, s)?;
    WeylSpace::install(catalog)?;
    Ok(status)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let (a, status) = load_catalog(Some(dir.path()), 3, 7).unwrap();
        assert_eq!(status, CacheStatus::Stored);
        let (b, status) = load_catalog(Some(dir.path()), 3, 7).unwrap();
        assert_eq!(status, CacheStatus::Hit);
        assert_eq!(a.classes(), b.classes());

        let path = cache_path(dir.path(), 3, 7);
        let text = fs::read_to_string(&path).unwrap().replacen("\"d\":1", "\"d\":2", 1);
        fs::write(&path, text).unwrap();
        let (c, status) = load_catalog(Some(dir.path()), 3, 7).unwrap();
        assert_eq!(status, CacheStatus::Replaced);
        assert_eq!(c.classes(), a.classes());
    }
}
