use std::cell::Cell;

use qhodge::instanton::{InstantonTable, TableJson};
use qhodge::quintic_b;
use qhodge_cli::args::Format;
use qhodge_cli::cache::{Cache, CacheError, Lookup};
use qhodge_cli::commands::cached;
use qhodge_cli::config::RunConfig;

fn table() -> InstantonTable {
    quintic_b::instanton_numbers(10).unwrap()
}

#[test]
fn store_then_load_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path().to_path_buf());
    let key = Cache::key("quintic.gw", &[("upto", "10".into())]);
    let payload = serde_json::to_string(&table().to_json()).unwrap();
    cache.store(&key, &payload).unwrap();
    let Lookup::Hit(back) = cache.load(&key).unwrap() else { panic!("expected a hit") };
    assert_eq!(back, payload);
    let raw: TableJson = serde_json::from_str(&back).unwrap();
    assert_eq!(InstantonTable::from_json(&raw).unwrap(), table());
}

#[test]
fn keys_depend_on_pipeline_and_parameters() {
    let a = Cache::key("quintic.gw", &[("upto", "10".into())]);
    assert_eq!(a, Cache::key("quintic.gw", &[("upto", "10".into())]));
    assert_ne!(a, Cache::key("quintic.gw", &[("upto", "11".into())]));
    assert_ne!(a, Cache::key("localp2.gw", &[("upto", "10".into())]));
}

#[test]
fn version_bump_invalidates() {
    let dir = tempfile::tempdir().unwrap();
    let old = Cache::with_version(dir.path().to_path_buf(), "old");
    old.store("k", "payload").unwrap();
    let new = Cache::with_version(dir.path().to_path_buf(), "new");
    assert_eq!(new.load("k").unwrap(), Lookup::Stale { found: "old".into() });
    assert_eq!(new.load("absent").unwrap(), Lookup::Miss);
}

#[test]
fn io_failure_is_distinct_from_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("not-a-dir");
    std::fs::write(&file, "x").unwrap();
    let cache = Cache::new(file);
    assert!(matches!(cache.store("k", "p"), Err(CacheError::Io { .. })));
}

#[test]
fn corrupted_payload_takes_the_recompute_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig { order: 12, precision: 20, format: Format::Json, cache_dir: Some(dir.path().to_path_buf()) };
    let calls = Cell::new(0);
    let compute = || {
        calls.set(calls.get() + 1);
        Ok(table().to_json())
    };
    let params = [("upto", "10".to_string())];
    let first: TableJson = cached(&cfg, "quintic.gw", &params, compute).unwrap();
    let second: TableJson = cached(&cfg, "quintic.gw", &params, compute).unwrap();
    assert_eq!(first, second);
    assert_eq!(calls.get(), 1);

    let cache = Cache::new(dir.path().to_path_buf());
    let path = cache.path_for(&Cache::key("quintic.gw", &params));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replace("609250", "609251")).unwrap();
    assert!(matches!(cache.load(&Cache::key("quintic.gw", &params)).unwrap(), Lookup::Corrupt(_)));
    let third: TableJson = cached(&cfg, "quintic.gw", &params, compute).unwrap();
    assert_eq!(third, first);
    assert_eq!(calls.get(), 2);
    assert!(matches!(cache.load(&Cache::key("quintic.gw", &params)).unwrap(), Lookup::Hit(_)));
}
