//! CSV result rows.

use std::io::Write;
use std::path::Path;

use crate::error::CliError;

pub const COLUMNS: [&str; 18] = [
    "mode", "p", "k", "q", "a", "X", "M", "N", "U", "V", "seed", "s", "value", "n_terms",
    "trivial_bound", "delta", "wall_ms", "version",
];

/// One completed computation. Absent fields are written as empty cells.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub mode: String,
    pub p: u64,
    pub k: u32,
    pub q: u64,
    pub a: Option<i64>,
    pub x: Option<u64>,
    pub big_m: Option<i64>,
    pub big_n: Option<i64>,
    pub big_u: Option<u64>,
    pub big_v: Option<u64>,
    pub seed: Option<u64>,
    pub s: Option<u32>,
    pub value: f64,
    pub n_terms: Option<u64>,
    pub trivial_bound: Option<f64>,
    pub delta: Option<f64>,
    pub wall_ms: Option<f64>,
    pub version: String,
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn cell<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn real_cell(x: Option<f64>) -> String {
    x.map(format_real).unwrap_or_default()
}

impl ResultRow {
    pub fn record(&self) -> [String; 18] {
        [
            self.mode.clone(),
            self.p.to_string(),
            self.k.to_string(),
            self.q.to_string(),
            cell(self.a),
            cell(self.x),
            cell(self.big_m),
            cell(self.big_n),
            cell(self.big_u),
            cell(self.big_v),
            cell(self.seed),
            cell(self.s),
            format_real(self.value),
            cell(self.n_terms),
            real_cell(self.trivial_bound),
            real_cell(self.delta),
            real_cell(self.wall_ms),
            self.version.clone(),
        ]
    }
}

/// Streams rows to a CSV destination, flushing after every row.
pub struct CsvSink<W: Write> {
    writer: csv::Writer<W>,
}

impl<W: Write> CsvSink<W> {
    pub fn new(inner: W) -> Result<Self, CliError> {
        let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(inner);
        writer.write_record(COLUMNS)?;
        writer.flush()?;
        Ok(Self { writer })
    }

    pub fn push(&mut self, row: &ResultRow) -> Result<(), CliError> {
        self.writer.write_record(row.record())?;
        self.writer.flush()?;
        Ok(())
    }
}

pub fn write_csv(rows: &[ResultRow], path: &Path) -> Result<(), CliError> {
    let file = std::fs::File::create(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut sink = CsvSink::new(file)?;
    rows.iter().try_for_each(|row| sink.push(row))
}
