use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// What a subcommand produced: a JSON payload, a plain rendering, the files
/// it read and wrote, and named pass/fail checks.
#[derive(Default)]
pub struct Outcome {
    pub payload: Value,
    pub text: Option<String>,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub checks: Vec<(String, bool)>,
}

impl Outcome {
    pub fn new(payload: impl Serialize) -> Self {
        Self { payload: serde_json::to_value(payload).expect("payload serializes"), ..Self::default() }
    }

    pub fn check(mut self, name: impl Into<String>, ok: bool) -> Self {
        self.checks.push((name.into(), ok));
        self
    }

    pub fn push_check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    pub fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

#[derive(Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything except `timing_ms` is deterministic; `digest` covers those
/// fields.
#[derive(Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub verification: Vec<CheckEntry>,
    pub passed: bool,
    pub result: Value,
    pub digest: String,
    pub timing_ms: u128,
}

fn sha_file(path: &Path) -> String {
    match std::fs::read(path) {
        Ok(bytes) => hex::encode(Sha256::digest(&bytes)),
        Err(_) => String::new(),
    }
}

fn digests(paths: &[PathBuf]) -> Vec<FileDigest> {
    paths.iter().map(|p| FileDigest { path: p.display().to_string(), sha256: sha_file(p) }).collect()
}

impl RunReport {
    pub fn build(command: Vec<String>, outcome: &Outcome, timing_ms: u128) -> Self {
        let inputs = digests(&outcome.inputs);
        let mut h = Sha256::new();
        for d in &inputs {
            h.update(d.sha256.as_bytes());
        }
        let inputs_digest = hex::encode(h.finalize());
        let outputs = digests(&outcome.outputs);
        let verification: Vec<CheckEntry> =
            outcome.checks.iter().map(|(name, pass)| CheckEntry { name: name.clone(), pass: *pass }).collect();
        let mut report = RunReport {
            command,
            inputs_digest,
            inputs,
            outputs,
            verification,
            passed: outcome.passed(),
            result: outcome.payload.clone(),
            digest: String::new(),
            timing_ms: 0,
        };
        let canonical = serde_json::to_vec(&report).expect("report serializes");
        report.digest = hex::encode(Sha256::digest(&canonical));
        report.timing_ms = timing_ms;
        report
    }
}
