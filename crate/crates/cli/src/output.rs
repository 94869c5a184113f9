use serde::{Deserialize, Serialize};
use serde_json::Value;

use qhodge::report::CheckReport;

use crate::args::Format;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    /// Left-aligned columns separated by two spaces.
    pub fn to_text(&self) -> String {
        let n = self.header.len();
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (i, c) in r.iter().enumerate().take(n) {
                widths[i] = widths[i].max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, c) in cells.iter().enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(c);
                } else {
                    s.push_str(c);
                    s.push_str(&" ".repeat(widths[i] - c.chars().count() + 2));
                }
            }
            s.push('\n');
            s
        };
        let mut out = line(&self.header);
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}

fn csv_field(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

/// What a command emits, in all three formats.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub table: Option<Table>,
}

impl Output {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json value serializes");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => self
                .table
                .as_ref()
                .map(Table::to_csv)
                .ok_or_else(|| CliError::Usage("this command has no tabular output; use text or json".into())),
        }
    }
}

/// Output plus the first counterexample, if any check failed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub output: Output,
    pub failure: Option<String>,
    pub format: Format,
}

/// Text/JSON/CSV views of a list of check reports.
pub fn reports_output(title: &str, reports: &[CheckReport], extra: Value) -> (Output, Option<String>) {
    let mut table = Table::new(&["check", "passed", "checks", "first_failure"]);
    let mut text = format!("{title}\n");
    for r in reports {
        text.push_str(&format!("  {}\n", r.summary()));
        table.push(vec![
            r.name.clone(),
            r.passed.to_string(),
            r.checks.to_string(),
            r.failures.first().cloned().unwrap_or_default(),
        ]);
    }
    let failure = first_failure(reports);
    text.push_str(if failure.is_none() { "all checks passed\n" } else { "FAILED\n" });
    let json = serde_json::json!({
        "title": title,
        "passed": failure.is_none(),
        "reports": reports,
        "details": extra,
    });
    (Output { text, json, table: Some(table) }, failure)
}

pub fn first_failure(reports: &[CheckReport]) -> Option<String> {
    reports
        .iter()
        .find(|r| !r.passed)
        .map(|r| format!("{}: {}", r.name, r.failures.first().map(String::as_str).unwrap_or("failed")))
}
