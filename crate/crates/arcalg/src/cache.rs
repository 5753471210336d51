//! Optional on-disk cache for text artifacts of a block.
//!
//! Enabled by pointing `ARCALG_CACHE` at a directory. Entries are keyed by
//! block, artifact kind and crate version; writers serialize through a lock
//! file and publish by rename, so readers never see partial payloads.

use std::fs::{self, OpenOptions};
use std::io::ErrorKind;
use std::path::{Path, PathBuf};
use std::thread;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::weights::Block;

pub const CACHE_ENV: &str = "ARCALG_CACHE";

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

/// The cache directory, if configured.
pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

pub fn entry_path(dir: &Path, block: &Block, kind: &str) -> PathBuf {
    let theta = if block.is_empty() { "-".to_string() } else { block.theta_string() };
    dir.join(format!("{theta}_{}_{kind}_v{}.txt", block.parity(), env!("CARGO_PKG_VERSION")))
}

struct Lock(PathBuf);

impl Lock {
    fn acquire(path: PathBuf) -> Result<Lock> {
        let start = Instant::now();
        loop {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(_) => return Ok(Lock(path)),
                Err(e) if e.kind() == ErrorKind::AlreadyExists => {
                    if start.elapsed() > Duration::from_secs(30) {
                        return Err(Error::Io(format!("timed out waiting for {}", path.display())));
                    }
                    thread::sleep(Duration::from_millis(20));
                }
                Err(e) => return Err(io(e)),
            }
        }
    }
}

impl Drop for Lock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

/// Look up `kind` for `block` in `dir`, computing and storing it on a miss.
pub fn cached_in(dir: &Path, block: &Block, kind: &str, compute: impl FnOnce() -> String) -> Result<String> {
    let path = entry_path(dir, block, kind);
    if let Ok(s) = fs::read_to_string(&path) {
        return Ok(s);
    }
    fs::create_dir_all(dir).map_err(io)?;
    let _lock = Lock::acquire(path.with_extension("lock"))?;
    // another writer may have finished while we waited
    if let Ok(s) = fs::read_to_string(&path) {
        return Ok(s);
    }
    let payload = compute();
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, &payload).map_err(io)?;
    fs::rename(&tmp, &path).map_err(io)?;
    Ok(payload)
}

/// Like [`cached_in`] with the directory from `ARCALG_CACHE`; recomputes when unset.
pub fn cached(block: &Block, kind: &str, compute: impl FnOnce() -> String) -> Result<String> {
    match cache_dir() {
        Some(dir) => cached_in(&dir, block, kind, compute),
        None => Ok(compute()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::Parity;

    #[test]
    fn hit_equals_miss() {
        let dir = std::env::temp_dir().join(format!("arcalg-cache-test-{}", std::process::id()));
        let block = Block::principal(3, Parity::Odd);
        let miss = cached_in(&dir, &block, "demo", || "payload\n".to_string()).unwrap();
        let hit = cached_in(&dir, &block, "demo", || unreachable!("served from disk")).unwrap();
        assert_eq!(miss, hit);
        assert!(entry_path(&dir, &block, "demo").exists());
        fs::remove_dir_all(&dir).unwrap();
    }
}
