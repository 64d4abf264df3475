//! Report envelope, JSON/CSV rendering and the report cache.
//!
//! Reports are cached as JSON under `report-<key>.json`, the key being the
//! SHA-256 of the command name, the canonical config and the hash of the
//! golden sign table.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use chevfq::rootdata::golden_hash;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::commands::Outcome;

#[derive(Clone, Serialize, Deserialize)]
pub struct Cached {
    pub paper_ref: String,
    pub result: Value,
    pub witnesses: Vec<Value>,
    pub pass: bool,
}

impl From<Outcome> for Cached {
    fn from(o: Outcome) -> Cached {
        Cached { paper_ref: o.paper_ref.into(), result: o.result, witnesses: o.witnesses, pass: o.pass }
    }
}

pub struct Report {
    command: &'static str,
    config: Value,
    body: Cached,
    complete: bool,
    cache_hit: bool,
}

impl Report {
    pub fn complete(command: &'static str, config: Value, body: Cached, cache_hit: bool) -> Report {
        Report { command, config, body, complete: true, cache_hit }
    }

    pub fn incomplete(command: &'static str, config: Value, message: &str, partial: Value) -> Report {
        let body = Cached {
            paper_ref: String::new(),
            result: json!({"error": message, "partial": partial}),
            witnesses: Vec::new(),
            pass: false,
        };
        Report { command, config, body, complete: false, cache_hit: false }
    }

    fn value(&self, runtime: Duration) -> Value {
        json!({
            "command": self.command,
            "config": self.config,
            "paper_ref": self.body.paper_ref,
            "result": self.body.result,
            "witnesses": self.body.witnesses,
            "pass": self.body.pass,
            "complete": self.complete,
            "runtime_ms": runtime.as_millis() as u64,
            "cache_hit": self.cache_hit,
        })
    }

    pub fn to_json(&self, runtime: Duration) -> String {
        let mut s = serde_json::to_string_pretty(&self.value(runtime)).expect("JSON values serialize");
        s.push('\n');
        s
    }

    /// One `key,value` row per scalar, keys being `/`-joined paths.
    pub fn to_csv(&self, runtime: Duration) -> String {
        let mut rows = Vec::new();
        flatten("", &self.value(runtime), &mut rows);
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["key", "value"]).expect("in-memory write");
        for (k, v) in rows {
            w.write_record([k, v]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory write")).expect("UTF-8 input")
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}/{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push((prefix.into(), s.clone())),
        Value::Null => out.push((prefix.into(), String::new())),
        other => out.push((prefix.into(), other.to_string())),
    }
}

pub fn report_key(command: &str, config: &Value) -> String {
    let mut h = Sha256::new();
    for part in [command, &config.to_string(), &golden_hash()] {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part.as_bytes());
    }
    hex::encode(h.finalize())
}

fn path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("report-{key}.json"))
}

pub fn load_cached(dir: &Path, key: &str) -> Option<Cached> {
    serde_json::from_slice(&fs::read(path(dir, key)).ok()?).ok()
}

pub fn store_cached(dir: &Path, key: &str, out: &Outcome) {
    let body = Cached {
        paper_ref: out.paper_ref.into(),
        result: out.result.clone(),
        witnesses: out.witnesses.clone(),
        pass: out.pass,
    };
    let p = path(dir, key);
    let tmp = p.with_extension("tmp");
    let res = fs::create_dir_all(dir)
        .and_then(|_| fs::write(&tmp, serde_json::to_vec(&body).expect("JSON values serialize")))
        .and_then(|_| fs::rename(&tmp, &p));
    if let Err(e) = res {
        eprintln!("warning: could not write report cache {}: {e}", p.display());
    }
}
