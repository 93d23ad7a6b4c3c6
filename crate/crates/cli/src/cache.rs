//! On-disk cache of enumeration results, one JSON file per key.

use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use klow::Cache;
use sha2::{Digest, Sha256};

pub struct FileCache {
    dir: PathBuf,
}

impl FileCache {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(FileCache { dir })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!(
            "{}.json",
            hex::encode(Sha256::digest(key.as_bytes()))
        ))
    }

    fn lock(&self, exclusive: bool) -> Option<File> {
        let f = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(self.dir.join(".lock"))
            .ok()?;
        let locked = if exclusive { f.lock() } else { f.lock_shared() };
        locked.ok().map(|_| f)
    }

    /// Removes every entry; returns how many were deleted.
    pub fn clear(&self) -> std::io::Result<usize> {
        let _guard = self.lock(true);
        let mut removed = 0;
        for entry in fs::read_dir(&self.dir)? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "json") {
                fs::remove_file(&path)?;
                removed += 1;
            }
        }
        Ok(removed)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

impl Cache for FileCache {
    fn load(&self, key: &str) -> Option<Vec<u8>> {
        let _guard = self.lock(false);
        fs::read(self.path(key)).ok()
    }

    fn store(&self, key: &str, data: &[u8]) {
        let _guard = self.lock(true);
        let path = self.path(key);
        let tmp = path.with_extension("tmp");
        let written = File::create(&tmp)
            .and_then(|mut f| f.write_all(data))
            .and_then(|_| fs::rename(&tmp, &path));
        if let Err(e) = written {
            let _ = fs::remove_file(&tmp);
            eprintln!(
                "{}",
                serde_json::json!({"warning": "cache write failed", "key": key, "detail": e.to_string()})
            );
        }
    }

    fn evict(&self, key: &str) {
        let _guard = self.lock(true);
        let _ = fs::remove_file(self.path(key));
        eprintln!(
            "{}",
            serde_json::json!({"warning": "corrupt cache entry evicted", "key": key})
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_load_evict() {
        let dir = tempfile::tempdir().unwrap();
        let c = FileCache::open(dir.path()).unwrap();
        assert_eq!(c.load("k"), None);
        c.store("k", b"[1,2]");
        assert_eq!(c.load("k").as_deref(), Some(&b"[1,2]"[..]));
        c.evict("k");
        assert_eq!(c.load("k"), None);
        c.store("a", b"1");
        c.store("b", b"2");
        assert_eq!(c.clear().unwrap(), 2);
    }
}
