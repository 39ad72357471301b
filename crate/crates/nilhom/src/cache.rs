//! Shared profile cache: a concurrent map in memory, optionally backed by one
//! JSON document per canonical weight vector on disk.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use dashmap::DashMap;
use nilhom_core::reduce::{MemoEntry, ProfileCache};
use nilhom_core::WeightVector;

use crate::format::CacheEntry;

/// Environment variable naming the cache directory.
pub const CACHE_DIR_ENV: &str = "NILHOM_CACHE_DIR";

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Debug)]
pub struct DiskStore {
    dir: PathBuf,
}

impl DiskStore {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, w: &WeightVector) -> PathBuf {
        let entries: Vec<String> = w.entries().iter().map(|v| v.to_string()).collect();
        self.dir.join(format!("n{}_{}.json", w.n(), entries.join("-")))
    }

    /// Missing, unreadable, foreign or stale documents all read as a miss.
    pub fn load(&self, w: &WeightVector) -> Option<MemoEntry> {
        let text = fs::read_to_string(self.path_for(w)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        entry.to_memo(w)
    }

    /// Writes to a temporary file in the same directory, then renames it
    /// over the target.
    pub fn store(&self, w: &WeightVector, e: &MemoEntry) -> io::Result<()> {
        let target = self.path_for(w);
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            target.file_name().and_then(|s| s.to_str()).unwrap_or("entry"),
            std::process::id(),
            TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let body = serde_json::to_string_pretty(&CacheEntry::new(w, e)).map_err(io::Error::other)?;
        let mut f = fs::File::create(&tmp)?;
        f.write_all(body.as_bytes())?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, &target).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }
}

#[derive(Debug, Default)]
pub struct SharedCache {
    memory: DashMap<WeightVector, MemoEntry>,
    disk: Option<DiskStore>,
    disk_hits: AtomicUsize,
    write_failures: AtomicUsize,
}

impl SharedCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn with_disk(store: DiskStore) -> Self {
        Self { disk: Some(store), ..Self::default() }
    }

    /// Disk-backed when `dir` is given, else when the environment names a
    /// directory, else memory only.
    pub fn open(dir: Option<&Path>) -> io::Result<Self> {
        let dir = dir.map(Path::to_path_buf).or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from));
        match dir {
            Some(d) => Ok(Self::with_disk(DiskStore::open(d)?)),
            None => Ok(Self::in_memory()),
        }
    }

    pub fn disk(&self) -> Option<&DiskStore> {
        self.disk.as_ref()
    }

    pub fn len(&self) -> usize {
        self.memory.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memory.is_empty()
    }

    pub fn disk_hits(&self) -> usize {
        self.disk_hits.load(Ordering::Relaxed)
    }

    pub fn write_failures(&self) -> usize {
        self.write_failures.load(Ordering::Relaxed)
    }
}

impl ProfileCache for SharedCache {
    fn get(&self, key: &WeightVector) -> Option<MemoEntry> {
        if let Some(e) = self.memory.get(key) {
            return Some(e.clone());
        }
        let e = self.disk.as_ref()?.load(key)?;
        self.disk_hits.fetch_add(1, Ordering::Relaxed);
        self.memory.insert(key.clone(), e.clone());
        Some(e)
    }

    fn insert(&self, key: WeightVector, entry: MemoEntry) {
        if let Some(d) = &self.disk {
            if d.store(&key, &entry).is_err() {
                self.write_failures.fetch_add(1, Ordering::Relaxed);
            }
        }
        self.memory.insert(key, entry);
    }
}
