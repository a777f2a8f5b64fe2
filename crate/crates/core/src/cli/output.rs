//! Serialisation of a run into its output directory.
//!
//! Files are written into a hidden sibling directory which is renamed into
//! place once complete, so a run directory is either absent or whole.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::config::{canonical, Format, LoadedConfig};
use super::run::{DatFile, ResultRow, RunOutput, Timing};
use crate::{Error, Result};

pub const RESULTS_FILE: &str = "results.csv";
pub const REPORT_FILE: &str = "report.json";
pub const RECORD_FILE: &str = "runrecord.json";
pub const WARNINGS_FILE: &str = "warnings.txt";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub config_hash: String,
    pub version: String,
    pub command: String,
    pub config: String,
    pub jobs: usize,
    pub timings: Vec<TimingEntry>,
    pub warnings: Vec<String>,
    pub files: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingEntry {
    pub operation: String,
    pub seconds: f64,
}

impl From<&Timing> for TimingEntry {
    fn from(t: &Timing) -> Self {
        Self {
            operation: t.operation.clone(),
            seconds: t.seconds,
        }
    }
}

/// `{:.16e}`: 17 significant digits, enough to round-trip any `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// `run` column value: the leading 16 hex digits of the config hash.
pub fn run_id(hash: &str) -> &str {
    &hash[..16.min(hash.len())]
}

pub fn write_results_csv(path: &Path, hash: &str, rows: &[ResultRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["run", "case", "observable", "value"])?;
    for r in rows {
        w.write_record([run_id(hash), r.case.as_str(), r.observable.as_str(), &format_value(r.value)])?;
    }
    w.flush()?;
    Ok(())
}

fn write_dat(path: &Path, command: &str, hash: &str, dat: &DatFile) -> Result<()> {
    let mut out = String::new();
    out.push_str(&format!("# qlayer {command}, record {RECORD_FILE}, config {hash}\n"));
    out.push_str(&format!("# {}\n", dat.columns.join(" ")));
    for row in &dat.rows {
        let cells: Vec<String> = row.iter().map(|&v| format_value(v)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

fn staging_dir(target: &Path) -> Result<PathBuf> {
    let name = target
        .file_name()
        .ok_or_else(|| Error::config(None, format!("invalid output directory {}", target.display())))?;
    let parent = match target.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&parent)?;
    Ok(parent.join(format!(".{}.partial-{}", name.to_string_lossy(), std::process::id())))
}

/// Writes every artefact of `output` to `dir`. An existing `dir` is replaced
/// only if it is empty or holds a previous run.
pub fn write_run(dir: &Path, l: &LoadedConfig, hash: &str, jobs: usize, output: &RunOutput) -> Result<RunRecord> {
    if dir.exists() {
        let previous = dir.join(RECORD_FILE).is_file();
        let empty = fs::read_dir(dir)?.next().is_none();
        if !previous && !empty {
            return Err(Error::config(
                None,
                format!("output directory {} exists and does not hold a previous run", dir.display()),
            ));
        }
    }
    let stage = staging_dir(dir)?;
    if stage.exists() {
        fs::remove_dir_all(&stage)?;
    }
    fs::create_dir(&stage)?;
    let result = write_files(&stage, l, hash, jobs, output);
    let record = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = fs::remove_dir_all(&stage);
            return Err(e);
        }
    };
    if dir.exists() {
        fs::remove_dir_all(dir)?;
    }
    fs::rename(&stage, dir)?;
    Ok(record)
}

fn write_files(stage: &Path, l: &LoadedConfig, hash: &str, jobs: usize, output: &RunOutput) -> Result<RunRecord> {
    let command = l.config.command.name();
    let formats = &l.config.output.formats;
    let mut files = Vec::new();
    if formats.contains(&Format::Csv) {
        write_results_csv(&stage.join(RESULTS_FILE), hash, &output.rows)?;
        files.push(RESULTS_FILE.to_string());
    }
    if formats.contains(&Format::Json) {
        let report = json!({
            "command": command,
            "config_hash": hash,
            "record": RECORD_FILE,
            "version": env!("CARGO_PKG_VERSION"),
            "data": output.report,
        });
        let mut text = serde_json::to_string_pretty(&report)?;
        text.push('\n');
        fs::write(stage.join(REPORT_FILE), text)?;
        files.push(REPORT_FILE.to_string());
    }
    if formats.contains(&Format::Dat) {
        for d in &output.dat {
            let name = format!("{}.dat", d.name);
            write_dat(&stage.join(&name), command, hash, d)?;
            files.push(name);
        }
    }
    if !output.warnings.is_empty() {
        let mut f = fs::File::create(stage.join(WARNINGS_FILE))?;
        for w in &output.warnings {
            writeln!(f, "{w}")?;
        }
        files.push(WARNINGS_FILE.to_string());
    }
    let record = RunRecord {
        config_hash: hash.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        config: canonical(&l.config),
        jobs,
        timings: output.timings.iter().map(TimingEntry::from).collect(),
        warnings: output.warnings.clone(),
        files,
    };
    let mut text = serde_json::to_string_pretty(&record)?;
    text.push('\n');
    fs::write(stage.join(RECORD_FILE), text)?;
    Ok(record)
}

pub fn read_record(dir: &Path) -> Result<RunRecord> {
    let path = dir.join(RECORD_FILE);
    let text = fs::read_to_string(&path)
        .map_err(|e| Error::Incompatible(format!("{}: no run record ({e})", dir.display())))?;
    Ok(serde_json::from_str(&text)?)
}
