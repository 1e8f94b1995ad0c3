//! Content-addressed cache of verification outcomes.
//!
//! Each entry is `<sha256>.json` under the cache directory, written to a
//! temporary file first and renamed into place.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use springer_qh::report::VerifyReport;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

/// Bumped whenever a change can alter verification outcomes.
const SCHEMA: &str = "sqh-cache-1";

pub fn code_version() -> String {
    format!("{}/{}", env!("CARGO_PKG_VERSION"), SCHEMA)
}

pub struct Cache {
    dir: PathBuf,
}

fn report_to_json(r: &VerifyReport) -> Value {
    json!({
        "suite": r.suite,
        "params": r.params.iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
        "passed": r.passed,
        "counterexample": r.counterexample,
    })
}

fn report_from_json(v: &Value) -> Option<VerifyReport> {
    let params = v["params"]
        .as_array()?
        .iter()
        .map(|p| Some((p[0].as_str()?.to_string(), p[1].as_str()?.to_string())))
        .collect::<Option<Vec<_>>>()?;
    Some(VerifyReport {
        suite: v["suite"].as_str()?.to_string(),
        params,
        passed: v["passed"].as_bool()?,
        counterexample: v["counterexample"].as_str().map(str::to_string),
        elapsed: Duration::ZERO,
    })
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    fn path(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(format!("{}\n{}", code_version(), key).as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("{hex}.json"))
    }

    pub fn get(&self, key: &str) -> Option<Vec<VerifyReport>> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        if v["version"] != code_version() || v["key"] != key {
            return None;
        }
        v["reports"].as_array()?.iter().map(report_from_json).collect()
    }

    pub fn put(&self, key: &str, reports: &[VerifyReport]) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let body = json!({
            "version": code_version(),
            "key": key,
            "reports": reports.iter().map(report_to_json).collect::<Vec<_>>(),
        });
        let target = self.path(key);
        let tmp = target.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&body)?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &target)
    }

    fn entries(&self) -> Vec<PathBuf> {
        let Ok(rd) = fs::read_dir(&self.dir) else { return Vec::new() };
        let mut v: Vec<PathBuf> = rd.filter_map(|e| e.ok().map(|e| e.path())).collect();
        v.sort();
        v
    }

    /// `(entries, bytes, stale entries)`.
    pub fn stat(&self) -> (usize, u64, usize) {
        let mut n = 0;
        let mut bytes = 0;
        let mut stale = 0;
        for p in self.entries() {
            n += 1;
            bytes += fs::metadata(&p).map(|m| m.len()).unwrap_or(0);
            if !is_current(&p) {
                stale += 1;
            }
        }
        (n, bytes, stale)
    }

    /// Removes entries from other code versions and leftover temporary files.
    pub fn gc(&self) -> std::io::Result<usize> {
        let mut removed = 0;
        for p in self.entries() {
            if !is_current(&p) {
                fs::remove_file(&p)?;
                removed += 1;
            }
        }
        Ok(removed)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

fn is_current(p: &Path) -> bool {
    if p.extension().and_then(|e| e.to_str()) != Some("json") {
        return false;
    }
    fs::read_to_string(p)
        .ok()
        .and_then(|t| serde_json::from_str::<Value>(&t).ok())
        .is_some_and(|v| v["version"] == code_version())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scratch(name: &str) -> PathBuf {
        let d = std::env::temp_dir().join(format!("sqh-cache-test-{name}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&d);
        d
    }

    #[test]
    fn round_trip_and_gc() {
        let dir = scratch("rt");
        let c = Cache::new(&dir);
        let mut r = VerifyReport::new("matching", &[("rank", "3".into())]);
        r.fail("E_2: lhs = 1; rhs = 2");
        assert!(c.get("k1").is_none());
        c.put("k1", &[r.clone()]).unwrap();
        assert_eq!(c.get("k1").unwrap(), vec![r]);
        assert!(c.get("k2").is_none());
        fs::write(dir.join("old.json"), r#"{"version":"0.0.0/old"}"#).unwrap();
        fs::write(dir.join("x.tmp1"), "partial").unwrap();
        assert_eq!(c.stat().0, 3);
        assert_eq!(c.stat().2, 2);
        assert_eq!(c.gc().unwrap(), 2);
        assert_eq!(c.stat(), (1, fs::metadata(c.path("k1")).unwrap().len(), 0));
        fs::remove_dir_all(&dir).unwrap();
    }
}
