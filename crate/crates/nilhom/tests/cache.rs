//! The persistent cache and the JSON documents.

use std::fs;

use nilhom::cache::{DiskStore, SharedCache};
use nilhom::format::{CacheEntry, TableDto};
use nilhom::run::{compute_table, TableOptions};
use nilhom_core::assemble::NilTable;
use nilhom_core::reduce::{ProfileCache, ReduceConfig, Reducer};
use nilhom_core::WeightVector;
use sha2::{Digest, Sha256};

fn json_of(n: usize, cache: &SharedCache) -> String {
    let table = compute_table(n, &TableOptions::default(), cache).unwrap();
    serde_json::to_string_pretty(&TableDto::from_table(&table, None)).unwrap()
}

#[test]
fn cold_and_warm_runs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cold = SharedCache::with_disk(DiskStore::open(dir.path()).unwrap());
    let first = json_of(5, &cold);
    assert!(fs::read_dir(dir.path()).unwrap().count() > 0);

    let warm = SharedCache::with_disk(DiskStore::open(dir.path()).unwrap());
    let second = json_of(5, &warm);
    assert!(warm.disk_hits() > 0);
    assert_eq!(Sha256::digest(&first), Sha256::digest(&second));

    // no temporary files are left behind
    for e in fs::read_dir(dir.path()).unwrap() {
        let name = e.unwrap().file_name().into_string().unwrap();
        assert!(name.starts_with('n') && name.ends_with(".json"), "{name}");
    }
}

#[test]
fn stale_engine_versions_are_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let store = DiskStore::open(dir.path()).unwrap();
    let w = WeightVector::new(vec![2, 3, 4, 2, 4]).unwrap();
    let cache = SharedCache::with_disk(DiskStore::open(dir.path()).unwrap());
    let entry = Reducer::new(ReduceConfig::default(), &cache).direct(&w).unwrap();
    store.store(&w, &entry).unwrap();
    assert_eq!(store.load(&w), Some(entry.clone()));

    let mut doc: CacheEntry = serde_json::from_str(&fs::read_to_string(store.path_for(&w)).unwrap()).unwrap();
    doc.engine_version = "nilhom-0.0.0-0".into();
    fs::write(store.path_for(&w), serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(store.load(&w), None);

    fs::write(store.path_for(&w), "{ not json").unwrap();
    assert_eq!(store.load(&w), None);
    let fresh = SharedCache::with_disk(store);
    assert_eq!(fresh.get(&w), None);
}

#[test]
fn document_for_another_vector_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let store = DiskStore::open(dir.path()).unwrap();
    let w = WeightVector::new(vec![2, 3, 2, 3]).unwrap();
    let v = WeightVector::new(vec![2, 2, 3, 3]).unwrap();
    let cache = SharedCache::in_memory();
    let entry = Reducer::new(ReduceConfig::default(), &cache).direct(&w).unwrap();
    store.store(&w, &entry).unwrap();
    fs::copy(store.path_for(&w), store.path_for(&v)).unwrap();
    assert_eq!(store.load(&v), None);
}

#[test]
fn table_json_round_trips() {
    let cache = SharedCache::in_memory();
    let table = compute_table(6, &TableOptions::default(), &cache).unwrap();
    let dto = TableDto::from_table(&table, Some(true));
    let text = serde_json::to_string(&dto).unwrap();
    let back: TableDto = serde_json::from_str(&text).unwrap();
    assert_eq!(back, dto);
    let restored = back.to_table();
    assert_eq!(restored.rows, table.rows);
    assert!(nilhom_core::assemble::compare(&NilTable::reference(6).unwrap(), &restored).is_empty());

    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["rows"][6]["free_rank"], 90);
    assert_eq!(v["rows"][6]["torsion"][0], serde_json::json!({"prime": 2, "power": 1, "count": 118}));
    assert_eq!(v["meta"]["verified"], true);
}

#[test]
fn shared_cache_serves_parallel_workers() {
    let cache = SharedCache::in_memory();
    let serial = compute_table(6, &TableOptions { jobs: 1, ..TableOptions::default() }, &cache).unwrap();
    let parallel = compute_table(6, &TableOptions { jobs: 8, ..TableOptions::default() }, &SharedCache::in_memory()).unwrap();
    assert_eq!(serial.rows, parallel.rows);
    assert!(!cache.is_empty());
}
