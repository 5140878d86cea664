//! Exact per-discriminant results kept between runs. Only rationals, integer
//! vectors and unit coordinates are stored, never floats.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    /// Coordinates (a, b) of ε = a + bω.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fund_unit: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<Vec<i64>>,
    /// ζ_F(−1) as "p/q".
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta_minus_one: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_number: Option<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: BTreeMap<String, Entry>,
}

#[derive(Debug)]
pub struct Cache {
    path: Option<PathBuf>,
    entries: BTreeMap<String, Entry>,
    dirty: bool,
}

impl Cache {
    /// Loads the cache; a missing, unreadable or outdated file starts empty.
    pub fn open(path: Option<PathBuf>) -> Self {
        let path = path.or_else(|| dirs::cache_dir().map(|d| d.join("hmcusp").join("cache.json")));
        let entries = path
            .as_deref()
            .and_then(|p| fs::read_to_string(p).ok())
            .and_then(|s| serde_json::from_str::<CacheFile>(&s).ok())
            .filter(|f| f.version == CACHE_VERSION)
            .map(|f| f.entries)
            .unwrap_or_default();
        Cache {
            path,
            entries,
            dirty: false,
        }
    }

    pub fn get(&self, disc: i64) -> Option<&Entry> {
        self.entries.get(&disc.to_string())
    }

    /// Merges the fields that are set in `update`.
    pub fn update(&mut self, disc: i64, update: Entry) {
        let e = self.entries.entry(disc.to_string()).or_default();
        let before = e.clone();
        if update.fund_unit.is_some() {
            e.fund_unit = update.fund_unit;
        }
        if update.period.is_some() {
            e.period = update.period;
        }
        if update.zeta_minus_one.is_some() {
            e.zeta_minus_one = update.zeta_minus_one;
        }
        if update.class_number.is_some() {
            e.class_number = update.class_number;
        }
        self.dirty |= *e != before;
    }

    pub fn save(&self) -> std::io::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        if !self.dirty {
            return Ok(());
        }
        if let Some(dir) = Path::new(path).parent() {
            fs::create_dir_all(dir)?;
        }
        let file = CacheFile {
            version: CACHE_VERSION,
            entries: self.entries.clone(),
        };
        fs::write(
            path,
            serde_json::to_string_pretty(&file).expect("cache serializes"),
        )
    }
}
