//! Experiment reports: named tables of typed cells, verdicts and the
//! tolerances they were judged with. JSON and CSV output are byte-stable.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, ExperimentName, Tolerances};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Bool(bool),
    Int(i64),
    Num(f64),
    Text(String),
    Missing(Option<()>),
}

impl Cell {
    pub fn missing() -> Self {
        Cell::Missing(None)
    }

    pub fn num(v: f64) -> Self {
        if v.is_finite() {
            Cell::Num(v)
        } else {
            Cell::Text(format!("{v}"))
        }
    }

    pub fn opt(v: Option<f64>) -> Self {
        v.map_or_else(Cell::missing, Cell::num)
    }

    /// Numeric view; integers widen, `inf`/`NaN` text parses back.
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Int(i) => Some(*i as f64),
            Cell::Text(t) => t.parse().ok(),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Cell::Bool(b) => Some(*b),
            _ => None,
        }
    }

    /// CSV field: floats as 17 significant digits in lowercase scientific
    /// notation, missing values empty.
    pub fn csv(&self) -> String {
        match self {
            Cell::Bool(b) => b.to_string(),
            Cell::Int(i) => i.to_string(),
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Text(t) if t.contains([',', '"', '\n']) => format!("\"{}\"", t.replace('"', "\"\"")),
            Cell::Text(t) => t.clone(),
            Cell::Missing(_) => String::new(),
        }
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::num(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<String> for Cell {
    fn from(t: String) -> Self {
        Cell::Text(t)
    }
}

impl From<&str> for Cell {
    fn from(t: &str) -> Self {
        Cell::Text(t.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width for table {}", self.name);
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::Config(format!("table {} has no column {name}", self.name)))
    }

    /// All values of a numeric column; missing cells are skipped.
    pub fn numbers(&self, column: &str) -> Result<Vec<f64>> {
        let i = self.column_index(column)?;
        Ok(self.rows.iter().filter_map(|r| r[i].as_f64()).collect())
    }

    pub fn bools(&self, column: &str) -> Result<Vec<bool>> {
        let i = self.column_index(column)?;
        self.rows
            .iter()
            .map(|r| {
                r[i].as_bool()
                    .ok_or_else(|| Error::Config(format!("column {column} is not boolean")))
            })
            .collect()
    }

    /// Raw cells of one column.
    pub fn cells(&self, column: &str) -> Result<Vec<&Cell>> {
        let i = self.column_index(column)?;
        Ok(self.rows.iter().map(|r| &r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", fields.join(","));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: ExperimentName,
    pub config: ExperimentConfig,
    pub tables: Vec<Table>,
    pub verdicts: BTreeMap<String, bool>,
    pub tolerances: Tolerances,
}

impl Report {
    /// Assemble a report whose verdicts are derived from `tables` alone.
    pub fn new(config: ExperimentConfig, tables: Vec<Table>) -> Result<Self> {
        let verdicts = crate::experiments::verdicts_from_tables(&config, &tables)?;
        Ok(Report {
            experiment: config.experiment,
            tolerances: config.tolerances.clone(),
            config,
            tables,
            verdicts,
        })
    }

    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    pub fn table(&self, name: &str) -> Result<&Table> {
        find_table(&self.tables, name)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    /// Writes `report.json` and one `<experiment>-<table>.csv` per table;
    /// returns the written paths in order.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        let json = dir.join("report.json");
        std::fs::write(&json, self.to_json()?)?;
        written.push(json);
        for t in &self.tables {
            let path = dir.join(format!("{}-{}.csv", self.experiment.as_str(), t.name));
            std::fs::write(&path, t.to_csv())?;
            written.push(path);
        }
        Ok(written)
    }

    /// One line per verdict, `PASS` or `FAIL`.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for (name, ok) in &self.verdicts {
            let _ = writeln!(out, "{} {name}", if *ok { "PASS" } else { "FAIL" });
        }
        out
    }
}

pub fn find_table<'a>(tables: &'a [Table], name: &str) -> Result<&'a Table> {
    tables
        .iter()
        .find(|t| t.name == name)
        .ok_or_else(|| Error::Config(format!("report has no table {name}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_formatting_is_fixed() {
        assert_eq!(Cell::num(0.1).csv(), "1.0000000000000001e-1");
        assert_eq!(Cell::num(-2.5).csv(), "-2.5000000000000000e0");
        assert_eq!(Cell::Int(7).csv(), "7");
        assert_eq!(Cell::Bool(false).csv(), "false");
        assert_eq!(Cell::missing().csv(), "");
        assert_eq!(Cell::from("a,b").csv(), "\"a,b\"");
        assert_eq!(Cell::num(f64::INFINITY).as_f64(), Some(f64::INFINITY));
    }

    #[test]
    fn cells_round_trip_through_json() {
        let row = vec![
            Cell::Bool(true),
            Cell::Int(3),
            Cell::num(0.25),
            Cell::from("z^4"),
            Cell::missing(),
        ];
        let text = serde_json::to_string(&row).unwrap();
        assert_eq!(text, r#"[true,3,0.25,"z^4",null]"#);
        let back: Vec<Cell> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, row);
    }

    #[test]
    fn table_columns() {
        let mut t = Table::new("t", &["n", "x", "ok"]);
        t.push(vec![1u32.into(), 0.5.into(), true.into()]);
        t.push(vec![2u32.into(), Cell::missing(), false.into()]);
        assert_eq!(t.numbers("x").unwrap(), vec![0.5]);
        assert_eq!(t.bools("ok").unwrap(), vec![true, false]);
        assert!(t.numbers("y").is_err());
        assert_eq!(t.to_csv(), "n,x,ok\n1,5.0000000000000000e-1,true\n2,,false\n");
    }
}
