//! Structured command output: a document of labeled integer tables plus
//! named pass/fail checks, rendered as aligned text, JSON, or CSV sections.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Meta {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub version: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OutputDocument {
    pub schema: u32,
    pub meta: Meta,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
}

impl OutputDocument {
    pub fn new(command: &str) -> Self {
        OutputDocument {
            schema: 1,
            meta: Meta {
                command: command.to_string(),
                parameters: BTreeMap::new(),
                version: env!("CARGO_PKG_VERSION").to_string(),
            },
            tables: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.meta
            .parameters
            .insert(key.to_string(), value.to_string());
    }

    pub fn push_table(
        &mut self,
        name: &str,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        rows: Vec<Vec<i64>>,
    ) {
        assert_eq!(row_labels.len(), rows.len());
        for r in &rows {
            assert_eq!(col_labels.len(), r.len());
        }
        self.tables.push(Table {
            name: name.to_string(),
            row_labels,
            col_labels,
            rows,
        });
    }

    pub fn push_check(&mut self, name: &str, lhs: i64, rhs: i64) {
        self.checks.push(Check {
            name: name.to_string(),
            pass: lhs == rhs,
            lhs: Some(lhs),
            rhs: Some(rhs),
            note: None,
        });
    }

    pub fn push_flag(&mut self, name: &str, pass: bool) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            lhs: None,
            rhs: None,
            note: None,
        });
    }

    pub fn push_note(&mut self, name: &str, note: &str) {
        self.checks.push(Check {
            name: name.to_string(),
            pass: true,
            lhs: None,
            rhs: None,
            note: Some(note.to_string()),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("serializable");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} v{}", self.meta.command, self.meta.version);
        if !self.meta.parameters.is_empty() {
            let ps: Vec<String> = self
                .meta
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            let _ = writeln!(out, "  {}", ps.join("  "));
        }
        for t in &self.tables {
            let _ = writeln!(out);
            let _ = writeln!(out, "{}", t.name);
            let mut widths: Vec<usize> = t.col_labels.iter().map(|c| c.len()).collect();
            for row in &t.rows {
                for (j, v) in row.iter().enumerate() {
                    widths[j] = widths[j].max(v.to_string().len());
                }
            }
            let rw = t.row_labels.iter().map(|r| r.len()).max().unwrap_or(0);
            let mut line = format!("  {:rw$}", "");
            for (j, c) in t.col_labels.iter().enumerate() {
                let _ = write!(line, "  {:>w$}", c, w = widths[j]);
            }
            let _ = writeln!(out, "{}", line.trim_end());
            for (label, row) in t.row_labels.iter().zip(&t.rows) {
                let mut line = format!("  {label:rw$}");
                for (j, v) in row.iter().enumerate() {
                    let _ = write!(line, "  {:>w$}", v, w = widths[j]);
                }
                let _ = writeln!(out, "{}", line.trim_end());
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out);
            for c in &self.checks {
                let status = if c.pass { "ok  " } else { "FAIL" };
                let mut line = format!("{status} {}", c.name);
                if let (Some(l), Some(r)) = (c.lhs, c.rhs) {
                    if c.pass {
                        let _ = write!(line, ": {l}");
                    } else {
                        let _ = write!(line, ": {l} != {r}");
                    }
                }
                if let Some(n) = &c.note {
                    let _ = write!(line, " ({n})");
                }
                let _ = writeln!(out, "{line}");
            }
            let passed = self.checks.iter().filter(|c| c.pass).count();
            let _ = writeln!(out, "{passed}/{} checks passed", self.checks.len());
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        for t in &self.tables {
            let _ = writeln!(out, "# table: {}", t.name);
            let _ = writeln!(out, ",{}", t.col_labels.join(","));
            for (label, row) in t.row_labels.iter().zip(&t.rows) {
                let vs: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "{},{}", label, vs.join(","));
            }
        }
        if !self.checks.is_empty() {
            let _ = writeln!(out, "# checks");
            let _ = writeln!(out, "name,pass,lhs,rhs,note");
            for c in &self.checks {
                let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    c.name,
                    c.pass,
                    opt(c.lhs),
                    opt(c.rhs),
                    c.note.clone().unwrap_or_default()
                );
            }
        }
        out
    }
}
