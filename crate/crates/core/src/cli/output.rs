//! Report rendering.

use std::fmt::Write as _;

use crate::experiments::{ExperimentReport, TaggedValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Pretty,
}

/// `report` in the chosen format, newline-terminated.
pub fn render(report: &ExperimentReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Csv => render_csv(report),
        OutputFormat::Pretty => render_pretty(report),
    }
}

fn render_csv(report: &ExperimentReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = report.rows.first() {
        w.write_record(first.iter().map(|t| t.name.as_str())).expect("in-memory write");
        for row in &report.rows {
            w.write_record(row.iter().map(|t| t.value.to_string())).expect("in-memory write");
        }
    } else {
        w.write_record(["section", "name", "value", "formula"]).expect("in-memory write");
        let sections: [(&str, &[TaggedValue]); 4] = [
            ("parameter", &report.parameters),
            ("value", &report.values),
            ("residual", &report.residuals),
            ("bound", &report.reference_bounds),
        ];
        for (section, items) in sections {
            for t in items {
                w.write_record([section, &t.name, &t.value.to_string(), &t.formula]).expect("in-memory write");
            }
        }
        for (k, v) in &report.settings {
            w.write_record(["setting", k, v, ""]).expect("in-memory write");
        }
        for f in &report.flags {
            w.write_record(["flag", "", f, ""]).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn render_pretty(report: &ExperimentReport) -> String {
    let mut s = String::new();
    let width = report
        .values
        .iter()
        .chain(&report.parameters)
        .chain(&report.residuals)
        .chain(&report.reference_bounds)
        .map(|t| t.name.len())
        .max()
        .unwrap_or(0);
    // headline values first so the answer is on the first lines
    for t in &report.values {
        let _ = writeln!(s, "{:width$}  {}", t.name, t.value);
    }
    let _ = writeln!(s, "[{}]", report.experiment);
    for (k, v) in &report.settings {
        let _ = writeln!(s, "  {k} = {v}");
    }
    let blocks: [(&str, &[TaggedValue]); 4] = [
        ("parameters", &report.parameters),
        ("values", &report.values),
        ("residuals", &report.residuals),
        ("reference bounds", &report.reference_bounds),
    ];
    for (title, items) in blocks {
        if items.is_empty() {
            continue;
        }
        let _ = writeln!(s, "{title}:");
        for t in items {
            let _ = writeln!(s, "  {:width$}  {:<24}  {}", t.name, t.value, t.formula);
        }
    }
    if let Some(first) = report.rows.first() {
        let _ = writeln!(s, "rows:");
        let header: Vec<String> = first.iter().map(|t| format!("{:>24}", t.name)).collect();
        let _ = writeln!(s, "{}", header.join(""));
        for row in &report.rows {
            let cells: Vec<String> = row.iter().map(|t| format!("{:>24}", t.value)).collect();
            let _ = writeln!(s, "{}", cells.join(""));
        }
    }
    for f in &report.flags {
        let _ = writeln!(s, "note: {f}");
    }
    if let Some(t) = report.timing_seconds {
        let _ = writeln!(s, "time: {t:.3} s");
    }
    s
}
