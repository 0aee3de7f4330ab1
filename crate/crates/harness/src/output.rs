//! CSV files. Every file starts with a schema comment line so readers can
//! reject files from a different layout.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use trilat_core::RangeAssignment;

use crate::error::{HarnessError, Result};
use crate::experiment::{Aggregate, TrialRecord, METRICS};
use crate::sweep::SweepPoint;

pub const SCHEMA_LINE: &str = "# trilat-csv v1";

fn writer(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    let file = File::create(path).map_err(|e| HarnessError::io(path, e))?;
    let mut out = BufWriter::new(file);
    writeln!(out, "{SCHEMA_LINE}").map_err(|e| HarnessError::io(path, e))?;
    Ok(csv::Writer::from_writer(out))
}

fn finish(path: &Path, w: csv::Writer<BufWriter<File>>) -> Result<()> {
    let mut inner = w.into_inner().map_err(|e| HarnessError::io(path, e.into_error()))?;
    inner.flush().map_err(|e| HarnessError::io(path, e))
}

fn record<I, S>(path: &Path, w: &mut csv::Writer<BufWriter<File>>, fields: I) -> Result<()>
where
    I: IntoIterator<Item = S>,
    S: AsRef<[u8]>,
{
    w.write_record(fields).map_err(|e| HarnessError::csv(path, e))
}

/// One row per solution: `trial, solution_index` then [`METRICS`].
pub fn write_solutions(path: &Path, records: &[TrialRecord]) -> Result<()> {
    let mut w = writer(path)?;
    record(path, &mut w, ["trial", "solution_index"].into_iter().chain(METRICS))?;
    for r in records {
        for (i, s) in r.solutions.iter().enumerate() {
            record(
                path,
                &mut w,
                [
                    r.trial.to_string(),
                    i.to_string(),
                    s.steps.to_string(),
                    s.node_steps.to_string(),
                    s.power_mw.to_string(),
                    s.localized_blind.to_string(),
                    s.participants.to_string(),
                    s.messages.to_string(),
                ],
            )?;
        }
    }
    finish(path, w)
}

/// Per-node settings behind every solution, with each trial's seed.
pub fn write_assignments(path: &Path, records: &[TrialRecord]) -> Result<()> {
    let mut w = writer(path)?;
    record(path, &mut w, ["trial", "seed", "solution_index", "node", "setting"])?;
    for r in records {
        for (i, s) in r.solutions.iter().enumerate() {
            let settings: Vec<String> = match &s.assignment {
                RangeAssignment::Discrete(levels) => levels.iter().map(|l| l.to_string()).collect(),
                RangeAssignment::Continuous(ranges) => ranges.iter().map(|r| r.to_string()).collect(),
            };
            for (node, setting) in settings.into_iter().enumerate() {
                record(
                    path,
                    &mut w,
                    [r.trial.to_string(), r.seed.to_string(), i.to_string(), node.to_string(), setting],
                )?;
            }
        }
    }
    finish(path, w)
}

pub fn write_aggregate(path: &Path, agg: &Aggregate) -> Result<()> {
    let mut w = writer(path)?;
    record(path, &mut w, ["statistic", "solutions"].into_iter().chain(METRICS))?;
    for (label, values) in agg.table() {
        let fields = [label.to_string(), agg.count.to_string()].into_iter().chain(values.iter().map(f64::to_string));
        record(path, &mut w, fields)?;
    }
    finish(path, w)
}

pub fn write_sweep(path: &Path, parameter: &str, points: &[SweepPoint]) -> Result<()> {
    let mut w = writer(path)?;
    let mut header = vec!["parameter".to_string(), "value".to_string(), "solutions".to_string()];
    for m in METRICS {
        header.push(format!("{m}_avg"));
        header.push(format!("{m}_stdev"));
    }
    record(path, &mut w, &header)?;
    for p in points {
        let mut fields = vec![parameter.to_string(), p.value.clone(), p.aggregate.count.to_string()];
        for k in 0..METRICS.len() {
            fields.push(p.aggregate.mean[k].to_string());
            fields.push(p.aggregate.stdev[k].to_string());
        }
        record(path, &mut w, &fields)?;
    }
    finish(path, w)
}

/// A solutions-file row as read back.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvSolution {
    pub trial: usize,
    pub solution_index: usize,
    pub metrics: [f64; 6],
}

fn reader(path: &Path) -> Result<csv::Reader<File>> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    if text.lines().next() != Some(SCHEMA_LINE) {
        return Err(HarnessError::io(
            path,
            std::io::Error::new(std::io::ErrorKind::InvalidData, format!("missing `{SCHEMA_LINE}` header")),
        ));
    }
    let file = File::open(path).map_err(|e| HarnessError::io(path, e))?;
    Ok(csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(file))
}

fn invalid(path: &Path, line: usize, message: String) -> HarnessError {
    HarnessError::io(path, std::io::Error::new(std::io::ErrorKind::InvalidData, format!("row {line}: {message}")))
}

pub fn read_solutions(path: &Path) -> Result<Vec<CsvSolution>> {
    let mut r = reader(path)?;
    let mut out = Vec::new();
    for (line, row) in r.records().enumerate() {
        let row = row.map_err(|e| HarnessError::csv(path, e))?;
        if row.len() != 2 + METRICS.len() {
            return Err(invalid(path, line + 1, format!("expected {} fields, got {}", 2 + METRICS.len(), row.len())));
        }
        let parse = |k: usize| row[k].parse::<f64>().map_err(|e| invalid(path, line + 1, format!("{}: {e}", &row[k])));
        let index =
            |k: usize| row[k].parse::<usize>().map_err(|e| invalid(path, line + 1, format!("{}: {e}", &row[k])));
        let mut metrics = [0.0; 6];
        for (k, m) in metrics.iter_mut().enumerate() {
            *m = parse(k + 2)?;
        }
        out.push(CsvSolution { trial: index(0)?, solution_index: index(1)?, metrics });
    }
    Ok(out)
}

/// `(statistic, count, values)` rows of an aggregate file.
pub fn read_aggregate(path: &Path) -> Result<Vec<(String, usize, [f64; 6])>> {
    let mut r = reader(path)?;
    let mut out = Vec::new();
    for (line, row) in r.records().enumerate() {
        let row = row.map_err(|e| HarnessError::csv(path, e))?;
        let bad = |m: String| invalid(path, line + 1, m);
        if row.len() != 2 + METRICS.len() {
            return Err(bad(format!("expected {} fields", 2 + METRICS.len())));
        }
        let count = row[1].parse().map_err(|e| bad(format!("{e}")))?;
        let mut values = [0.0; 6];
        for (k, v) in values.iter_mut().enumerate() {
            *v = row[k + 2].parse().map_err(|e| bad(format!("{e}")))?;
        }
        out.push((row[0].to_string(), count, values));
    }
    Ok(out)
}
