use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::GameScore;
use crate::error::Result;

#[derive(Debug, Serialize, Deserialize)]
struct Record {
    key: String,
    problem: String,
    value: GameScore,
}

/// Append-only JSON-lines store of solved positions.
#[derive(Debug)]
pub struct ResultCache {
    path: PathBuf,
    entries: Mutex<HashMap<(String, String), GameScore>>,
}

impl ResultCache {
    /// Opens `path`, loading existing records. A missing file is treated as empty.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        if path.exists() {
            for line in BufReader::new(File::open(&path)?).lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let r: Record = serde_json::from_str(&line)?;
                entries.insert((r.key, r.problem), r.value);
            }
        }
        Ok(ResultCache { path, entries: Mutex::new(entries) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &str, problem: &str) -> Option<GameScore> {
        let entries = self.entries.lock().expect("cache lock");
        entries.get(&(key.to_string(), problem.to_string())).copied()
    }

    /// Records a value; keys already present are left alone.
    pub fn insert(&self, key: &str, problem: &str, value: GameScore) -> Result<()> {
        let mut entries = self.entries.lock().expect("cache lock");
        let k = (key.to_string(), problem.to_string());
        if entries.contains_key(&k) {
            return Ok(());
        }
        let record = Record { key: k.0.clone(), problem: k.1.clone(), value };
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(f, "{}", serde_json::to_string(&record)?)?;
        entries.insert(k, value);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn persists_across_opens() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let c = ResultCache::open(&path).unwrap();
        assert!(c.is_empty());
        c.insert("00ab", "is", GameScore::Value(3)).unwrap();
        c.insert("00ab", "ds", GameScore::Infeasible).unwrap();
        c.insert("00ab", "is", GameScore::Value(3)).unwrap();
        let again = ResultCache::open(&path).unwrap();
        assert_eq!(again.len(), 2);
        assert_eq!(again.get("00ab", "is"), Some(GameScore::Value(3)));
        assert_eq!(again.get("00ab", "ds"), Some(GameScore::Infeasible));
        assert_eq!(again.get("00ab", "vc"), None);
    }
}
