//! Rendering tables and writing outputs with their run manifest.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Exit code 2 for bad input or I/O, 3 when an internal cross-check fails.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Consistency(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Consistency(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "error: {m}"),
            Failure::Consistency(m) => write!(f, "consistency failure: {m}"),
        }
    }
}

impl From<ratgenus::Error> for Failure {
    fn from(e: ratgenus::Error) -> Self {
        match e {
            ratgenus::Error::Consistency(_) => Failure::Consistency(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;

pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        Table { headers: headers.to_vec(), rows: Vec::new() }
    }

    pub fn to_csv(&self) -> CliResult<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Failure::Input(format!("csv: {e}"));
        w.write_record(&self.headers).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Failure::Input(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Failure::Input(e.to_string()))
    }
}

pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(format!("json: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// What a command produced: the rendered body, the parameters that fix it,
/// and how many cross-check exceptions it found.
pub struct Report {
    pub body: String,
    pub ranges: BTreeMap<String, String>,
    pub depth: Option<usize>,
    pub exceptions: usize,
    /// Input that was read but rejected; reported after the output is written.
    pub rejected: Option<String>,
    pub summary: Option<String>,
}

impl Report {
    pub fn new(body: String) -> Self {
        Report { body, ranges: BTreeMap::new(), depth: None, exceptions: 0, rejected: None, summary: None }
    }

    pub fn range(mut self, key: &str, value: impl ToString) -> Self {
        self.ranges.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Serialize)]
struct OutputEntry {
    path: String,
    bytes: usize,
    sha256: String,
}

#[derive(Serialize)]
struct RunManifest<'a> {
    command: Vec<String>,
    subcommand: &'a str,
    seed: u64,
    ranges: &'a BTreeMap<String, String>,
    depth: Option<usize>,
    format: Format,
    outputs: Vec<OutputEntry>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(&Sha256::digest(bytes)[..])
}

/// Writes the body to `out` (or stdout) and the manifest next to it (or to stderr).
pub fn emit(
    report: &Report,
    command: Vec<String>,
    subcommand: &str,
    seed: u64,
    format: Format,
    out: Option<&Path>,
) -> CliResult<()> {
    let entry = OutputEntry {
        path: out.map(|p| p.display().to_string()).unwrap_or_else(|| "-".into()),
        bytes: report.body.len(),
        sha256: sha256_hex(report.body.as_bytes()),
    };
    let manifest = RunManifest {
        command,
        subcommand,
        seed,
        ranges: &report.ranges,
        depth: report.depth,
        format,
        outputs: vec![entry],
    };
    let manifest = to_json(&manifest)?;
    match out {
        Some(path) => {
            std::fs::write(path, &report.body)
                .map_err(|e| Failure::Input(format!("writing {}: {e}", path.display())))?;
            let mpath = format!("{}.manifest.json", path.display());
            std::fs::write(&mpath, manifest).map_err(|e| Failure::Input(format!("writing {mpath}: {e}")))?;
        }
        None => {
            print!("{}", report.body);
            eprint!("{manifest}");
        }
    }
    if let Some(s) = &report.summary {
        eprintln!("{s}");
    }
    Ok(())
}
