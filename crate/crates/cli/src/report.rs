//! The envelope every command produces, and the errors mapped to exit codes.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input, or a violated precondition on it.
    #[error("input error: {0}")]
    Input(String),
    /// A pipeline failed on valid input.
    #[error("computation error: {0}")]
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Compute(_) => 3,
        }
    }
}

/// The result of one command, before it is wrapped into a [`RunReport`].
#[derive(Debug, Default)]
pub struct Outcome {
    pub results: Value,
    pub human: String,
    pub warnings: Vec<String>,
    /// Set by the cross-check when the two pipelines disagree.
    pub disagreement: bool,
}

/// Machine-readable report. Contains nothing that varies between identical
/// runs, so the JSON is byte-for-byte reproducible; timing goes to the human
/// output only.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub input_digest: String,
    pub results: Value,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn new(command: Vec<String>, input: &[u8], outcome: &Outcome) -> Self {
        RunReport {
            tool: "derquot".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command,
            input_digest: digest(input),
            results: outcome.results.clone(),
            warnings: outcome.warnings.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json()).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Human output: the command's text, then warnings, then timing.
pub fn render_human(outcome: &Outcome, seconds: f64) -> String {
    let mut out = outcome.human.clone();
    if !out.ends_with('\n') {
        out.push('\n');
    }
    for w in &outcome.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(out, "wall time: {seconds:.3}s");
    out
}

/// A plain two-or-more column table with right-aligned numbers.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (c, cell) in r.iter().enumerate().take(cols) {
            width[c] = width[c].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: &[String], out: &mut String| {
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{:>w$}", s, w = width[c]))
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&header.iter().map(|s| s.to_string()).collect::<Vec<_>>(), &mut out);
    for r in rows {
        line(r, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable() {
        assert_eq!(
            digest(b"abc"),
            "sha256:ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn table_alignment() {
        let t = table(&["j", "dim"], &[vec!["0".into(), "1".into()], vec!["-1".into(), "12".into()]]);
        assert_eq!(t, " j  dim\n 0    1\n-1   12\n");
    }
}
