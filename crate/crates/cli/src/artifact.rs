//! Output plumbing. JSON artifacts carry `tool`, `version` and `config_hash`
//! fields; CSV artifacts keep their exact schema and get a `<file>.meta.json`
//! sidecar with the same fields.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const TOOL: &str = "hecke";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// SHA-256 of the compact JSON form of `semantic` (object keys sorted).
pub fn config_hash(semantic: &Value) -> String {
    format!("{:x}", Sha256::digest(semantic.to_string().as_bytes()))
}

fn provenance(command: &str, semantic: &Value) -> Value {
    json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "config_hash": config_hash(semantic),
        "config": semantic,
    })
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    hecke_core::survey::write_atomic(path, bytes).map_err(CliError::from)
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Record the provenance of a CSV file that has already been written.
pub fn write_sidecar(
    path: &Path,
    command: &str,
    semantic: &Value,
    extra: Value,
) -> Result<(), CliError> {
    let mut meta = provenance(command, semantic);
    if let (Value::Object(m), Value::Object(e)) = (&mut meta, extra) {
        m.extend(e);
    }
    let text = serde_json::to_string_pretty(&meta).expect("JSON values serialise") + "\n";
    write_atomic(&sidecar_path(path), text.as_bytes())
}

/// Write a CSV table to `out` (atomically, with sidecar) or to stdout.
pub fn emit_csv(
    out: Option<&Path>,
    text: &str,
    command: &str,
    semantic: &Value,
) -> Result<(), CliError> {
    match out {
        Some(path) => {
            write_atomic(path, text.as_bytes())?;
            let rows = text.lines().count().saturating_sub(1);
            write_sidecar(path, command, semantic, json!({ "rows": rows }))
        }
        None => stdout(text),
    }
}

/// Merge provenance into `body` and write it to `out` or stdout.
pub fn emit_json(
    out: Option<&Path>,
    mut body: Value,
    command: &str,
    semantic: &Value,
) -> Result<(), CliError> {
    if let (Value::Object(b), Value::Object(p)) = (&mut body, provenance(command, semantic)) {
        for (k, v) in p {
            b.entry(k).or_insert(v);
        }
    }
    let text = serde_json::to_string_pretty(&body).expect("JSON values serialise") + "\n";
    match out {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => stdout(&text),
    }
}

pub fn stdout(text: &str) -> Result<(), CliError> {
    let mut lock = std::io::stdout().lock();
    lock.write_all(text.as_bytes())
        .and_then(|_| lock.flush())
        .or_else(|e| {
            // a closed pipe (`| head`) is not a failure of the computation
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                Ok(())
            } else {
                Err(CliError::Resource(format!("cannot write to stdout: {e}")))
            }
        })
}
