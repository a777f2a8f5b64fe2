//! Observable-by-observable comparison of two run directories.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use super::output::{read_record, RESULTS_FILE};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareTol {
    pub rel: f64,
    pub abs: f64,
}

impl Default for CompareTol {
    fn default() -> Self {
        Self { rel: 1e-6, abs: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffEntry {
    pub case: String,
    pub observable: String,
    pub a: Option<f64>,
    pub b: Option<f64>,
    /// `|a − b| / max(|a|, |b|)`; infinite when one side is missing.
    pub rel: f64,
    pub exceeds: bool,
}

/// Entries whose values are not bit-identical.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffReport {
    pub command: String,
    pub entries: Vec<DiffEntry>,
}

impl DiffReport {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn exceeded(&self) -> usize {
        self.entries.iter().filter(|e| e.exceeds).count()
    }
}

type Table = BTreeMap<(String, String), f64>;

fn read_results(dir: &Path) -> Result<Table> {
    let path = dir.join(RESULTS_FILE);
    let mut r = csv::Reader::from_path(&path)
        .map_err(|e| Error::Incompatible(format!("{}: {e}", path.display())))?;
    let header: Vec<String> = r.headers()?.iter().map(String::from).collect();
    if header != ["run", "case", "observable", "value"] {
        return Err(Error::Incompatible(format!("{}: unexpected columns {header:?}", path.display())));
    }
    let mut table = Table::new();
    for rec in r.records() {
        let rec = rec?;
        let value: f64 = rec[3]
            .parse()
            .map_err(|_| Error::Incompatible(format!("{}: bad value {:?}", path.display(), &rec[3])))?;
        table.insert((rec[1].to_string(), rec[2].to_string()), value);
    }
    Ok(table)
}

/// Relative difference of every observable present in either run. Only
/// observables whose name starts with `only` are compared when it is given.
pub fn compare_runs(dir_a: &Path, dir_b: &Path, tol: CompareTol, only: Option<&str>) -> Result<DiffReport> {
    let (ra, rb) = (read_record(dir_a)?, read_record(dir_b)?);
    if ra.command != rb.command {
        return Err(Error::Incompatible(format!(
            "runs of different commands: {} vs {}",
            ra.command, rb.command
        )));
    }
    let (ta, tb) = (read_results(dir_a)?, read_results(dir_b)?);
    let mut keys: Vec<&(String, String)> = ta.keys().chain(tb.keys()).collect();
    keys.sort();
    keys.dedup();
    let entries = keys
        .into_iter()
        .filter(|(_, obs)| only.is_none_or(|p| obs.starts_with(p)))
        .filter_map(|key| {
            let (a, b) = (ta.get(key).copied(), tb.get(key).copied());
            let (rel, exceeds) = match (a, b) {
                (Some(x), Some(y)) if x.to_bits() == y.to_bits() => return None,
                (Some(x), Some(y)) => {
                    let scale = x.abs().max(y.abs());
                    let rel = if scale > 0.0 { (x - y).abs() / scale } else { 0.0 };
                    (rel, rel > tol.rel && (x - y).abs() > tol.abs || rel.is_nan())
                }
                _ => (f64::INFINITY, true),
            };
            Some(DiffEntry {
                case: key.0.clone(),
                observable: key.1.clone(),
                a,
                b,
                rel,
                exceeds,
            })
        })
        .collect();
    Ok(DiffReport {
        command: ra.command,
        entries,
    })
}
