//! Deterministic serialization: fixed float formatting (17 significant
//! digits), versioned CSV headers, sorted JSON keys. Identical runs must
//! produce identical bytes, so nothing here depends on wall time, thread
//! count, or map iteration order.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[value(name = "csv")]
    Csv,
    #[value(name = "json")]
    Json,
}

/// Canonical float rendering: scientific with 17 significant digits, which
/// round-trips every f64; infinities keep the config spelling `inf`.
pub fn fmt_float(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf".to_string() } else { "-inf".to_string() }
    } else {
        format!("{x:.16e}")
    }
}

/// JSON value for a float that may be infinite (JSON numbers cannot be).
pub fn json_float(x: f64) -> serde_json::Value {
    if x.is_finite() {
        serde_json::json!(x)
    } else if x > 0.0 {
        serde_json::json!("inf")
    } else {
        serde_json::json!("-inf")
    }
}

/// Pretty JSON with a trailing newline. `serde_json` maps preserve nothing:
/// `Value::Object` iterates sorted by key, so output is deterministic.
pub fn render_json(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("values are finite by construction");
    text.push('\n');
    text
}

/// A CSV builder with the shared `# negspec <kind> v1` header convention.
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(kind: &str) -> Self {
        let mut buf = String::new();
        let _ = writeln!(buf, "# negspec {kind} v1");
        Csv { buf }
    }

    pub fn comment(mut self, text: &str) -> Self {
        let _ = writeln!(self.buf, "# {text}");
        self
    }

    pub fn header(mut self, columns: &[&str]) -> Self {
        let _ = writeln!(self.buf, "{}", columns.join(","));
        self
    }

    pub fn row(&mut self, cells: &[String]) {
        let _ = writeln!(self.buf, "{}", cells.join(","));
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

/// Write the artifact to the path, or to stdout when no path was given.
/// Content is fully materialized before any byte reaches the target, so a
/// failed run never leaves partial output behind.
pub fn emit(content: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
