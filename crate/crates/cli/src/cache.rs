//! Append-only JSON-lines coefficient cache.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use nullsum_core::nullstellensatz::{CoefficientRecord, CoefficientStore, TargetSpec};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Bumped whenever the polynomial families or the extraction semantics change.
pub const PIPELINE_VERSION: &str = "families-v1;targets-v1;values-exact";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("{path}:{line}: corrupt record: {msg}")]
    Corrupt { path: PathBuf, line: usize, msg: String },
    #[error("{path}:{line}: schema version {found}, expected {SCHEMA_VERSION}")]
    Schema { path: PathBuf, line: usize, found: u32 },
    #[error("conflicting cached values for {target}: {first} vs {second}")]
    Conflict { target: TargetSpec, first: String, second: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

/// Content hash of the pipeline configuration a record was computed under.
pub fn config_hash() -> String {
    let digest = Sha256::digest(PIPELINE_VERSION.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub schema: u32,
    pub config: String,
    #[serde(flatten)]
    pub record: CoefficientRecord,
}

impl CacheRecord {
    pub fn current(record: CoefficientRecord) -> Self {
        CacheRecord { schema: SCHEMA_VERSION, config: config_hash(), record }
    }
}

type Key = (String, TargetSpec);

struct State {
    records: HashMap<Key, CacheRecord>,
    file: Option<File>,
}

pub struct JsonlCache {
    path: PathBuf,
    config: String,
    state: Mutex<State>,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CacheError + '_ {
    move |source| CacheError::Io { path: path.to_path_buf(), source }
}

/// Parses a cache file; every line must be a valid record of the current schema.
pub fn read_records(path: &Path) -> Result<Vec<CacheRecord>, CacheError> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut out = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let corrupt = |msg: String| CacheError::Corrupt { path: path.to_path_buf(), line: n + 1, msg };
        let raw: serde_json::Value = serde_json::from_str(&line).map_err(|e| corrupt(e.to_string()))?;
        let found = raw.get("schema").and_then(|v| v.as_u64()).ok_or_else(|| corrupt("missing schema".into()))?;
        if found != SCHEMA_VERSION as u64 {
            return Err(CacheError::Schema { path: path.to_path_buf(), line: n + 1, found: found as u32 });
        }
        let rec: CacheRecord = serde_json::from_value(raw).map_err(|e| corrupt(e.to_string()))?;
        rec.record.target.validated().map_err(|e| corrupt(e.to_string()))?;
        out.push(rec);
    }
    Ok(out)
}

fn sort_key(r: &CacheRecord) -> (String, TargetSpec) {
    (r.config.clone(), r.record.target)
}

impl JsonlCache {
    pub fn open(path: impl Into<PathBuf>) -> Result<Self, CacheError> {
        let path = path.into();
        let mut records = HashMap::new();
        if path.exists() {
            for rec in read_records(&path)? {
                insert_checked(&mut records, rec)?;
            }
        }
        Ok(JsonlCache { path, config: config_hash(), state: Mutex::new(State { records, file: None }) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// All records in a stable order.
    pub fn list(&self) -> Vec<CacheRecord> {
        let mut v: Vec<CacheRecord> = self.state.lock().unwrap().records.values().cloned().collect();
        v.sort_by_key(sort_key);
        v
    }

    pub fn len(&self) -> usize {
        self.state.lock().unwrap().records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn clear(&self) -> Result<usize, CacheError> {
        let mut st = self.state.lock().unwrap();
        let n = st.records.len();
        st.file = None;
        st.records.clear();
        if self.path.exists() {
            File::create(&self.path).map_err(io_err(&self.path))?;
        }
        Ok(n)
    }

    pub fn export(&self, dest: &Path) -> Result<usize, CacheError> {
        let records = self.list();
        let mut text = String::new();
        for r in &records {
            text.push_str(&serde_json::to_string(r).expect("record serializes"));
            text.push('\n');
        }
        fs::write(dest, text).map_err(io_err(dest))?;
        Ok(records.len())
    }

    /// Adds the records of `src` that are not present yet; returns how many.
    pub fn import(&self, src: &Path) -> Result<usize, CacheError> {
        let incoming = read_records(src)?;
        let mut st = self.state.lock().unwrap();
        for rec in &incoming {
            if let Some(prev) = st.records.get(&sort_key(rec)) {
                check_same(prev, rec)?;
            }
        }
        let mut added = 0;
        for rec in incoming {
            if !st.records.contains_key(&sort_key(&rec)) {
                self.append(&mut st, &rec)?;
                st.records.insert(sort_key(&rec), rec);
                added += 1;
            }
        }
        Ok(added)
    }

    fn append(&self, st: &mut State, rec: &CacheRecord) -> Result<(), CacheError> {
        if st.file.is_none() {
            if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(io_err(dir))?;
            }
            let f = OpenOptions::new().create(true).append(true).open(&self.path).map_err(io_err(&self.path))?;
            st.file = Some(f);
        }
        let mut line = serde_json::to_string(rec).expect("record serializes");
        line.push('\n');
        let f = st.file.as_mut().unwrap();
        f.write_all(line.as_bytes()).and_then(|_| f.flush()).map_err(io_err(&self.path))
    }
}

fn check_same(prev: &CacheRecord, rec: &CacheRecord) -> Result<(), CacheError> {
    if prev.record.value != rec.record.value {
        return Err(CacheError::Conflict {
            target: rec.record.target,
            first: prev.record.value.to_string(),
            second: rec.record.value.to_string(),
        });
    }
    Ok(())
}

fn insert_checked(records: &mut HashMap<Key, CacheRecord>, rec: CacheRecord) -> Result<(), CacheError> {
    if let Some(prev) = records.get(&sort_key(&rec)) {
        return check_same(prev, &rec);
    }
    records.insert(sort_key(&rec), rec);
    Ok(())
}

impl CoefficientStore for JsonlCache {
    fn lookup(&self, target: &TargetSpec) -> Option<CoefficientRecord> {
        let st = self.state.lock().unwrap();
        st.records.get(&(self.config.clone(), *target)).map(|r| r.record.clone())
    }

    fn store(&self, record: &CoefficientRecord) -> Result<(), String> {
        let rec = CacheRecord::current(record.clone());
        let mut st = self.state.lock().unwrap();
        if let Some(prev) = st.records.get(&sort_key(&rec)) {
            return check_same(prev, &rec).map_err(|e| e.to_string());
        }
        self.append(&mut st, &rec).map_err(|e| e.to_string())?;
        st.records.insert(sort_key(&rec), rec);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nullsum_core::nullstellensatz::{Method, RunMeta};

    fn rec(j: usize, v: i64) -> CoefficientRecord {
        CoefficientRecord {
            target: TargetSpec::e(6, j).unwrap(),
            value: v.into(),
            method: Method::CappedPipeline,
            meta: RunMeta::default(),
        }
    }

    #[test]
    fn store_and_reopen() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub/cache.jsonl");
        let c = JsonlCache::open(&path).unwrap();
        assert!(c.is_empty());
        c.store(&rec(1, -28)).unwrap();
        c.store(&rec(1, -28)).unwrap();
        assert!(c.store(&rec(1, 5)).is_err());
        drop(c);
        let c = JsonlCache::open(&path).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.lookup(&TargetSpec::e(6, 1).unwrap()).unwrap().value, (-28).into());
        assert!(c.lookup(&TargetSpec::e(6, 2).unwrap()).is_none());
    }

    #[test]
    fn other_config_is_not_a_hit() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut r = CacheRecord::current(rec(2, -40));
        r.config = "0000".into();
        fs::write(&path, serde_json::to_string(&r).unwrap() + "\n").unwrap();
        let c = JsonlCache::open(&path).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.lookup(&TargetSpec::e(6, 2).unwrap()).is_none());
    }

    #[test]
    fn corrupt_and_schema_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let good = serde_json::to_string(&CacheRecord::current(rec(1, -28))).unwrap();
        fs::write(&path, format!("{good}\n{{\"schema\":1,\"config\":\n")).unwrap();
        match JsonlCache::open(&path) {
            Err(CacheError::Corrupt { line, .. }) => assert_eq!(line, 2),
            other => panic!("{:?}", other.map(|_| ())),
        }
        fs::write(&path, good.replace("\"schema\":1", "\"schema\":7") + "\n").unwrap();
        assert!(matches!(JsonlCache::open(&path), Err(CacheError::Schema { found: 7, .. })));
        fs::write(&path, good.replace("\"k\":6", "\"k\":99") + "\n").unwrap();
        assert!(matches!(JsonlCache::open(&path), Err(CacheError::Corrupt { line: 1, .. })));
    }

    #[test]
    fn export_import_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let a = JsonlCache::open(dir.path().join("a.jsonl")).unwrap();
        for (j, v) in [(1, -28), (2, -40), (3, -20)] {
            a.store(&rec(j, v)).unwrap();
        }
        let out = dir.path().join("export.jsonl");
        assert_eq!(a.export(&out).unwrap(), 3);
        let b = JsonlCache::open(dir.path().join("b.jsonl")).unwrap();
        assert_eq!(b.import(&out).unwrap(), 3);
        assert_eq!(b.import(&out).unwrap(), 0);
        assert_eq!(a.list(), b.list());
        assert_eq!(b.clear().unwrap(), 3);
        assert!(JsonlCache::open(dir.path().join("b.jsonl")).unwrap().is_empty());
    }
}
