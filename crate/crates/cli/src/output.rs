//! Buffered output, written to stdout or atomically to a file.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use eqlab_core::algebra::ProjPoint;
use eqlab_core::freeness::{CirclePoint, FreenessCertificate, Piece, PingPongSet, RelationWitness, Violation};
use eqlab_core::solver::SolutionRecord;
use serde_json::{json, Value};

pub struct Sink {
    buf: String,
    path: Option<PathBuf>,
}

impl Sink {
    pub fn new(path: Option<PathBuf>) -> Self {
        Sink { buf: String::new(), path }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
        self.buf.push('\n');
    }

    pub fn json(&mut self, v: &Value) {
        self.line(v.to_string());
    }

    /// Write everything: to a temp file in the target directory that is then
    /// renamed over the target, or to stdout.
    pub fn finish(self) -> Result<()> {
        match self.path {
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(self.buf.as_bytes()).context("io: stdout")?;
                out.flush().context("io: stdout")
            }
            Some(path) => {
                let dir = match path.parent() {
                    Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
                    _ => PathBuf::from("."),
                };
                let mut tmp = tempfile::NamedTempFile::new_in(&dir).with_context(|| format!("io: temp file in {}", dir.display()))?;
                tmp.write_all(self.buf.as_bytes()).context("io: writing temp file")?;
                tmp.as_file().sync_all().context("io: syncing temp file")?;
                tmp.persist(&path).with_context(|| format!("io: renaming onto {}", path.display()))?;
                Ok(())
            }
        }
    }
}

pub fn point(p: &ProjPoint) -> String {
    p.to_string()
}

pub fn record(r: &SolutionRecord) -> Value {
    json!({ "n": r.n, "lambda": point(&r.point), "verified": r.verified, "branch": r.branch.to_string() })
}

fn circle_point(p: &CirclePoint) -> String {
    match p {
        None => "inf".into(),
        Some(v) => v.to_string(),
    }
}

pub fn piece(p: &Piece) -> Value {
    match p {
        Piece::Arc(a) => json!({ "interval": [circle_point(&a.lo), circle_point(&a.hi)] }),
        Piece::Progression(pr) => json!({ "progression": [pr.start.to_string(), pr.step.to_string()] }),
    }
}

pub fn set(s: &PingPongSet) -> Value {
    let mut intervals = vec![];
    let mut progressions = vec![];
    for p in &s.pieces {
        match p {
            Piece::Arc(a) => intervals.push(json!([circle_point(&a.lo), circle_point(&a.hi)])),
            Piece::Progression(pr) => progressions.push(json!([pr.start.to_string(), pr.step.to_string()])),
        }
    }
    let mut v = serde_json::Map::new();
    if !intervals.is_empty() {
        v.insert("intervals".into(), Value::Array(intervals));
    }
    if !progressions.is_empty() {
        v.insert("progressions".into(), Value::Array(progressions));
    }
    Value::Object(v)
}

pub fn certificate(c: &FreenessCertificate) -> Value {
    let checks: Vec<Value> =
        c.checks.iter().map(|k| json!({ "map": k.map, "set": k.set, "piece": k.piece, "image": piece(&k.image), "holder": k.holder })).collect();
    let mut v = json!({
        "verdict": "certified",
        "maps": c.maps.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "sets": c.sets.iter().map(set).collect::<Vec<_>>(),
        "checks": checks,
    });
    if let Some(eq) = &c.equality {
        v["equality"] = json!(eq);
    }
    v
}

pub fn violation(v: &Violation) -> Value {
    json!({ "verdict": "refuted", "map": v.map, "set": v.set, "piece": v.piece, "image": piece(&v.image) })
}

pub fn relation(w: &RelationWitness) -> Value {
    json!({ "word1": w.word1.to_string(), "word2": w.word2.to_string(), "map": w.common_map.to_string() })
}
