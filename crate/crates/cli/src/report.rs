//! Run reports: the command line, digests and contents of every input, and
//! the verdict object produced by the command.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Clone, Debug, Serialize)]
pub struct InputFile {
    pub path: String,
    pub sha256: String,
    pub content: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Vec<InputFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub verdict: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

/// Reads inputs and remembers their digests.
#[derive(Default)]
pub struct Inputs {
    files: Vec<InputFile>,
}

impl Inputs {
    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let content = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        self.files.push(InputFile {
            path: path.display().to_string(),
            sha256: format!("{:x}", Sha256::digest(content.as_bytes())),
            content: content.clone(),
        });
        Ok(content)
    }

    pub fn into_files(self) -> Vec<InputFile> {
        self.files
    }
}

impl RunReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command.join(" ")));
        for f in &self.inputs {
            out.push_str(&format!("input: {} sha256={}\n", f.path, f.sha256));
        }
        if let Some(s) = self.seed {
            out.push_str(&format!("seed: {s}\n"));
        }
        match &self.verdict {
            Value::Object(map) => {
                for (k, v) in map {
                    let shown = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    if shown.contains('\n') {
                        out.push_str(&format!("{k}:\n{}\n", indent(&shown)));
                    } else {
                        out.push_str(&format!("{k}: {shown}\n"));
                    }
                }
            }
            other => out.push_str(&format!("verdict: {other}\n")),
        }
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("timing_ms: {t:.3}\n"));
        }
        out
    }
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("  {l}")).collect::<Vec<_>>().join("\n")
}
