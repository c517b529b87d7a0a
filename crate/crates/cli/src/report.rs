//! Command reports and their two renderings.
//!
//! The JSON rendering carries every field of the text rendering except the
//! wall-clock time, so it is byte-identical across runs with the same input.

use std::fmt::Write as _;
use std::time::Duration;

use rbx_core::check::Coverage;
use rbx_core::Verdict;
use serde_json::{json, Map, Value};

#[derive(Clone, Debug)]
pub struct VerdictLine {
    pub name: String,
    pub pass: bool,
    /// Number of basis tuples examined, when the check is a scan.
    pub checked: Option<usize>,
    pub coverage: Option<Coverage>,
    pub detail: Option<String>,
}

impl VerdictLine {
    pub fn flag(name: impl Into<String>, pass: bool, detail: Option<String>) -> Self {
        VerdictLine {
            name: name.into(),
            pass,
            checked: None,
            coverage: None,
            detail,
        }
    }

    /// A scan verdict; `describe` turns the violating tuple into labels.
    pub fn scan<V>(name: impl Into<String>, v: &Verdict<V>, describe: impl FnOnce(&V) -> String) -> Self {
        VerdictLine {
            name: name.into(),
            pass: v.is_pass(),
            checked: Some(v.checked),
            coverage: Some(v.coverage),
            detail: v.violation.as_ref().map(describe),
        }
    }

    fn coverage_text(&self) -> Option<String> {
        self.coverage.map(|c| match c {
            Coverage::Exhaustive => "exhaustive".to_string(),
            Coverage::Sampled { seed } => format!("sampled, seed {seed}"),
        })
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), json!(self.name));
        m.insert("pass".into(), json!(self.pass));
        if let Some(n) = self.checked {
            m.insert("checked".into(), json!(n));
        }
        if let Some(c) = self.coverage_text() {
            m.insert("coverage".into(), json!(c));
        }
        if let Some(d) = &self.detail {
            m.insert("detail".into(), json!(d));
        }
        Value::Object(m)
    }
}

/// Two-column listing such as `P(x) = ...` lines or product tables.
#[derive(Clone, Debug)]
pub struct Table {
    pub title: String,
    pub rows: Vec<(String, String)>,
}

/// A labelled matrix of rendered scalars.
#[derive(Clone, Debug)]
pub struct Grid {
    pub title: String,
    pub note: String,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub cells: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub fields: Vec<(String, Value)>,
    pub tables: Vec<Table>,
    pub grids: Vec<Grid>,
    pub verdicts: Vec<VerdictLine>,
    pub notices: Vec<String>,
    pub elapsed: Option<Duration>,
}

impl Report {
    pub fn new(command: String) -> Self {
        Report {
            command,
            ..Report::default()
        }
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn verdict(&mut self, v: VerdictLine) -> &mut Self {
        self.verdicts.push(v);
        self
    }

    pub fn notice(&mut self, text: impl Into<String>) -> &mut Self {
        self.notices.push(text.into());
        self
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        let fields: Map<String, Value> = self.fields.iter().cloned().collect();
        let tables: Vec<Value> = self
            .tables
            .iter()
            .map(|t| json!({"title": t.title, "rows": t.rows.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>()}))
            .collect();
        let grids: Vec<Value> = self
            .grids
            .iter()
            .map(|g| {
                json!({
                    "title": g.title,
                    "note": g.note,
                    "rows": g.row_labels,
                    "columns": g.col_labels,
                    "cells": g.cells,
                })
            })
            .collect();
        let doc = json!({
            "command": self.command,
            "results": fields,
            "tables": tables,
            "matrices": grids,
            "verdicts": self.verdicts.iter().map(VerdictLine::to_json).collect::<Vec<_>>(),
            "notices": self.notices,
            "pass": self.all_pass(),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        let width = self.fields.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        for (k, v) in &self.fields {
            let _ = writeln!(out, "  {k:<width$}  {}", value_text(v));
        }
        for t in &self.tables {
            let _ = writeln!(out, "{}", t.title);
            let w = t.rows.iter().map(|(a, _)| a.chars().count()).max().unwrap_or(0);
            for (a, b) in &t.rows {
                let _ = writeln!(out, "  {a:<w$} = {b}");
            }
        }
        for g in &self.grids {
            let _ = writeln!(out, "{} ({})", g.title, g.note);
            let rw = g.row_labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
            let cw: Vec<usize> = (0..g.col_labels.len())
                .map(|j| {
                    g.cells
                        .iter()
                        .map(|r| r[j].chars().count())
                        .chain([g.col_labels[j].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let _ = write!(out, "  {:rw$}", "");
            for (l, w) in g.col_labels.iter().zip(&cw) {
                let _ = write!(out, "  {l:>w$}");
            }
            out.push('\n');
            for (label, row) in g.row_labels.iter().zip(&g.cells) {
                let _ = write!(out, "  {label:<rw$}");
                for (c, w) in row.iter().zip(&cw) {
                    let _ = write!(out, "  {c:>w$}");
                }
                out.push('\n');
            }
        }
        if !self.verdicts.is_empty() {
            let _ = writeln!(out, "checks");
            let w = self.verdicts.iter().map(|v| v.name.chars().count()).max().unwrap_or(0);
            for v in &self.verdicts {
                let mark = if v.pass { "PASS" } else { "FAIL" };
                let _ = write!(out, "  {mark}  {:<w$}", v.name);
                let mut extra = Vec::new();
                if let Some(n) = v.checked {
                    extra.push(format!("{n} checked"));
                }
                if let Some(c) = v.coverage_text() {
                    extra.push(c);
                }
                if !extra.is_empty() {
                    let _ = write!(out, "  [{}]", extra.join(", "));
                }
                if let Some(d) = &v.detail {
                    let _ = write!(out, "  {d}");
                }
                out.push('\n');
            }
        }
        for n in &self.notices {
            let _ = writeln!(out, "note: {n}");
        }
        if let Some(t) = self.elapsed {
            let _ = writeln!(out, "time: {:.1} ms", t.as_secs_f64() * 1e3);
        }
        out.lines().map(|l| format!("{}\n", l.trim_end())).collect()
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(value_text).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}
