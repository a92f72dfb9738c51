use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use hkq::groebner::{Ideal, PresentedRing};
use serde_json::{json, Value};

use crate::CliError;

/// Machine-readable JSON plus its human-readable rendering.
pub struct Report {
    pub json: Value,
    pub text: String,
    /// Flow graph in DOT format, written as `<stem>.dot`.
    pub dot: Option<String>,
}

impl Report {
    pub fn new() -> Self {
        Report {
            json: json!({}),
            text: String::new(),
            dot: None,
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.json
            .as_object_mut()
            .expect("report root is an object")
            .insert(key.to_string(), value);
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("report serializes");
        s.push('\n');
        s
    }
}

fn write(path: &Path, body: &str) -> Result<(), CliError> {
    fs::write(path, body).map_err(|e| CliError::Write(format!("{}: {e}", path.display())))
}

fn with_ext(stem: &Path, ext: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// Writes `<stem>.json`, `<stem>.txt` and, for flow graphs, `<stem>.dot`.
pub fn emit(report: &Report, stem: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut written = Vec::new();
    let json = with_ext(stem, "json");
    write(&json, &report.json_string())?;
    written.push(json);
    let txt = with_ext(stem, "txt");
    write(&txt, &report.text)?;
    written.push(txt);
    if let Some(dot) = &report.dot {
        let path = with_ext(stem, "dot");
        write(&path, dot)?;
        written.push(path);
    }
    Ok(written)
}

pub fn ideal_json(ideal: &Ideal) -> Value {
    serde_json::to_value(ideal.to_json()).expect("ideal serializes")
}

pub fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(|x| x.to_string()).collect()
}

pub fn join<T: ToString>(items: &[T], sep: &str) -> String {
    strings(items).join(sep)
}

/// `Q[t1, ..., x] / <` followed by one generator per line.
pub fn ring_block(title: &str, ring: &PresentedRing, notes: Option<&[String]>) -> String {
    let mut out = String::new();
    let r = ring.ring();
    let _ = writeln!(out, "{title} = {}[{}] / <", r.field().name(), r.names().join(", "));
    let gens = ring.relations().gens();
    for (i, g) in gens.iter().enumerate() {
        let sep = if i + 1 < gens.len() { "," } else { "" };
        match notes.and_then(|n| n.get(i)) {
            Some(note) if *note != g.to_string() => {
                let _ = writeln!(out, "  {g}{sep}    [{note}]");
            }
            _ => {
                let _ = writeln!(out, "  {g}{sep}");
            }
        }
    }
    out.push_str(">\n");
    out
}

/// 1-based `{1,2}` rendering of 1-based index lists.
pub fn set1(s: &[usize]) -> String {
    format!("{{{}}}", join(s, ","))
}
