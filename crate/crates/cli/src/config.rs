//! Run configuration shared by all subcommands and embedded in every report.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// A flag combination that parses but makes no sense.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub orders: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub trunc: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub strategy: String,
    pub cap: usize,
    pub tolerances: BTreeMap<String, f64>,
    pub crate_version: &'static str,
}

/// Parses `KEY=VAL` overrides and rejects keys outside `known`.
pub fn parse_tolerances(raw: &[String], defaults: &[(&str, f64)]) -> anyhow::Result<BTreeMap<String, f64>> {
    let mut map: BTreeMap<String, f64> = defaults.iter().map(|&(k, v)| (k.to_string(), v)).collect();
    for item in raw {
        let (key, val) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("tolerance {item:?} is not KEY=VAL")))?;
        if !map.contains_key(key) {
            let known: Vec<&str> = defaults.iter().map(|d| d.0).collect();
            return Err(usage(format!("unknown tolerance key {key:?}; known: {}", known.join(", "))));
        }
        let v: f64 = val
            .parse()
            .map_err(|_| usage(format!("tolerance {key} needs a number, got {val:?}")))?;
        if !(v.is_finite() && v >= 0.0) {
            return Err(usage(format!("tolerance {key} must be finite and nonnegative")));
        }
        map.insert(key.to_string(), v);
    }
    Ok(map)
}

/// Where a report goes. CSV written to a file gets a `<file>.config.json`
/// sidecar with the configuration; JSON reports carry it inline.
pub struct Sink {
    path: Option<PathBuf>,
}

impl Sink {
    pub fn new(path: Option<&Path>) -> Self {
        Self {
            path: path.map(Path::to_path_buf),
        }
    }

    pub fn writer(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.path {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    pub fn write_sidecar(&self, config: &RunConfig) -> anyhow::Result<()> {
        match &self.path {
            Some(p) => {
                let mut name = p.as_os_str().to_owned();
                name.push(".config.json");
                rans::report::write_json(config, File::create(PathBuf::from(name))?)?;
            }
            None => {
                eprintln!("config: {}", serde_json::to_string(config)?);
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
pub struct Report<'a, T: Serialize> {
    pub config: &'a RunConfig,
    #[serde(flatten)]
    pub body: T,
}
