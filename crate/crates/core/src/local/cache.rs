//! Memoisation of standard basis results.
//!
//! Results are keyed by the SHA-256 digest of a canonical serialisation of
//! the (primitive, sorted) generators. An in-process map is always
//! available; when `GERMLAB_CACHE_DIR` is set, entries are also persisted
//! there as small JSON files.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::sbasis::{LeadingData, Mon, SPoly};

pub const CACHE_DIR_ENV: &str = "GERMLAB_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Stored {
    nvars: usize,
    rank: usize,
    leading: Vec<(u16, Vec<u16>)>,
    corner: Option<u32>,
}

impl From<&LeadingData> for Stored {
    fn from(d: &LeadingData) -> Self {
        Stored {
            nvars: d.nvars,
            rank: d.rank,
            leading: d.leading.iter().map(|m| (m.comp, m.exp.to_vec())).collect(),
            corner: d.corner,
        }
    }
}

impl From<Stored> for LeadingData {
    fn from(s: Stored) -> Self {
        LeadingData {
            nvars: s.nvars,
            rank: s.rank,
            leading: s.leading.into_iter().map(|(c, e)| Mon::new(c, e.into_iter().collect())).collect(),
            corner: s.corner,
        }
    }
}

fn memory() -> &'static Mutex<HashMap<String, LeadingData>> {
    static MAP: OnceLock<Mutex<HashMap<String, LeadingData>>> = OnceLock::new();
    MAP.get_or_init(Default::default)
}

pub(crate) fn key(nvars: usize, rank: usize, cap: u32, gens: &[SPoly]) -> String {
    let mut canon: Vec<String> = gens
        .iter()
        .map(|g| {
            g.terms
                .iter()
                .map(|(m, c)| format!("{}:{:?}:{}", m.comp, m.exp.as_slice(), c))
                .collect::<Vec<_>>()
                .join(";")
        })
        .collect();
    canon.sort();
    let mut h = Sha256::new();
    h.update(format!("v1|{nvars}|{rank}|{cap}|").as_bytes());
    for g in canon {
        h.update(g.as_bytes());
        h.update(b"|");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn disk_path(key: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_DIR_ENV)?;
    Some(PathBuf::from(dir).join(format!("{key}.json")))
}

pub(crate) fn lookup(key: &str) -> Option<LeadingData> {
    if let Some(d) = memory().lock().expect("cache lock").get(key) {
        return Some(d.clone());
    }
    let path = disk_path(key)?;
    let text = std::fs::read_to_string(path).ok()?;
    let stored: Stored = serde_json::from_str(&text).ok()?;
    let data = LeadingData::from(stored);
    memory().lock().expect("cache lock").insert(key.to_string(), data.clone());
    Some(data)
}

pub(crate) fn store(key: &str, data: &LeadingData) {
    memory().lock().expect("cache lock").insert(key.to_string(), data.clone());
    if let Some(path) = disk_path(key) {
        if let Some(parent) = path.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        if let Ok(text) = serde_json::to_string(&Stored::from(data)) {
            // Write then rename so concurrent readers never see partial files.
            static COUNTER: AtomicU64 = AtomicU64::new(0);
            let n = COUNTER.fetch_add(1, Ordering::Relaxed);
            let tmp = path.with_extension(format!("tmp{}_{n}", std::process::id()));
            if std::fs::write(&tmp, text).is_ok() {
                let _ = std::fs::rename(&tmp, &path);
            }
        }
    }
}

/// Drops every in-memory entry.
pub fn clear_memory_cache() {
    memory().lock().expect("cache lock").clear();
}
