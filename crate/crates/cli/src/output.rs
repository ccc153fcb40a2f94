//! CSV tables and the JSON metadata sidecar.

use std::io::{self, Write};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

/// Bumped whenever a column is added, renamed or reordered.
pub const SCHEMA_VERSION: u32 = 1;

pub const UNITS_COMMENT: &str = "# natural units hbar=kB=1";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(usize),
    Num(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    pub fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format_number(*v),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(v) => Some(*v as f64),
            Cell::Num(v) => Some(*v),
            _ => None,
        }
    }
}

/// Column names plus rows in output order.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row does not match the schema");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }
}

/// 12 significant digits, shortest of fixed or exponent form like C's `%.12g`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exponent) = sci.split_once('e').expect("exponent form");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    if (-5..12).contains(&exponent) {
        let decimals = (11 - exponent).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        let sign = if exponent < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exponent.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes the comment lines, the header and every row with LF endings.
pub fn write_csv(table: &Table, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{UNITS_COMMENT}")?;
    writeln!(out, "# schema_version={SCHEMA_VERSION}")?;
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    writer.write_record(&table.columns)?;
    for row in &table.rows {
        writer.write_record(row.iter().map(Cell::render))?;
    }
    writer.flush()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema_version: u32,
    pub preset: String,
    pub task: String,
    /// SHA-256 of the canonical TOML form of the configuration.
    pub config_sha256: String,
    pub wall_time_s: f64,
    pub rows: usize,
    pub columns: Vec<String>,
    pub grid_notes: Vec<String>,
    pub config: String,
}

impl Metadata {
    pub fn new(config: &RunConfig, table: &Table, wall_time_s: f64, notes: &[&str]) -> Self {
        let canonical = config.to_toml();
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            schema_version: SCHEMA_VERSION,
            preset: config.preset.name().into(),
            task: serde_json::to_value(config.task)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
            config_sha256: config_hash(&canonical),
            wall_time_s,
            rows: table.rows.len(),
            columns: table.columns.clone(),
            grid_notes: notes.iter().map(|s| s.to_string()).collect(),
            config: canonical,
        }
    }

    pub fn write(&self, out: &mut dyn Write) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)
    }
}

pub fn config_hash(canonical: &str) -> String {
    Sha256::digest(canonical.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// A plotting script for `csv_name`; wide tables plot every numeric column
/// against the first, long tables draw one line per `(partition, T)` group.
pub fn plot_script(csv_name: &str, table: &Table) -> String {
    let x = table.columns.first().cloned().unwrap_or_default();
    format!(
        r##"import matplotlib.pyplot as plt
import pandas as pd

df = pd.read_csv("{csv_name}", comment="#")
x = "{x}"
fig, ax = plt.subplots()
if "partition" in df.columns:
    y = df.columns[-1]
    keys = [c for c in ("partition", "T", "n") if c in df.columns and c != x]
    for key, group in df.groupby(keys):
        ax.plot(group[x], group[y], marker="o", label=str(key))
    ax.set_ylabel(y)
else:
    for column in df.columns[1:]:
        if pd.api.types.is_numeric_dtype(df[column]):
            ax.plot(df[x], df[column], marker="o", label=column)
ax.set_xlabel(x)
ax.legend()
fig.savefig("{stem}.png", dpi=150)
"##,
        stem = csv_name.trim_end_matches(".csv"),
    )
}
