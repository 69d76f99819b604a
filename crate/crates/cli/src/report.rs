//! Canonical report serialization: JSON with sorted keys, two-space
//! indentation and a trailing newline. Ideals are printed as the reduced
//! grevlex basis of `gens + K`, so equal ideals print equally.

use std::io::Write;
use std::path::Path;

use frobsat::{Ideal, Polynomial};
use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub assertions: Vec<String>,
    pub result: Value,
    pub seed: u64,
    /// Wall-clock data; omitted from the output unless requested.
    pub timings: Option<Value>,
}

impl Report {
    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("inputs".into(), self.inputs.clone());
        m.insert("assertions".into(), json!(self.assertions));
        m.insert("result".into(), self.result.clone());
        m.insert("seed".into(), json!(self.seed));
        m.insert("version".into(), json!(TOOL_VERSION));
        if let Some(t) = &self.timings {
            m.insert("timings".into(), t.clone());
        }
        Value::Object(m)
    }

    pub fn render(&self) -> String {
        let mut s =
            serde_json::to_string_pretty(&self.to_value()).expect("JSON values always serialize");
        s.push('\n');
        s
    }
}

/// The reduced basis of `gens + K`, as `"g1, g2, ..."`.
pub fn ideal_text(i: &Ideal) -> String {
    if i.is_unit() {
        return "1".into();
    }
    i.canonical_generators()
        .iter()
        .map(Polynomial::to_text)
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn poly_text(f: &Polynomial) -> String {
    f.to_text()
}

/// Writes to `path` through a temporary file in the same directory, or to
/// stdout when `path` is `None`.
pub fn write_report(report: &Report, path: Option<&Path>) -> Result<()> {
    let text = report.render();
    let Some(path) = path else {
        let mut out = std::io::stdout().lock();
        return out
            .write_all(text.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            });
    };
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
