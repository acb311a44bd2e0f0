use crate::{serde_tag, HarnessError, ScanReport, TrialReport};
use embed::SweepReport;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Plotdata,
}

fn csv_string(header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> Result<String, HarnessError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

/// One row per cell, no timing columns, so equal specs give equal bytes.
pub fn to_csv(report: &TrialReport) -> Result<String, HarnessError> {
    let header = [
        "n", "C", "p", "pattern", "k", "trials", "successes", "success_rate", "witnesses", "witnesses_valid",
        "failure_stages",
    ];
    let rows = report.cells.iter().map(|c| {
        let stages: Vec<String> = c.failure_stages.iter().map(|(s, k)| format!("{s}={k}")).collect();
        vec![
            c.n.to_string(),
            c.c.to_string(),
            format!("{:.6}", c.p),
            c.pattern.clone(),
            c.k.to_string(),
            c.trials.to_string(),
            c.successes.to_string(),
            format!("{:.4}", c.success_rate()),
            c.witnesses.to_string(),
            c.witnesses_valid.to_string(),
            stages.join(";"),
        ]
    });
    csv_string(&header, rows)
}

pub fn to_json(report: &TrialReport) -> String {
    serde_json::to_string_pretty(report).expect("plain data serialises")
}

/// `C rate` blocks per `(n, pattern)` in grid order, separated by two blank
/// lines as gnuplot's `index` expects.
pub fn to_plotdata(report: &TrialReport) -> String {
    type Block<'a> = ((usize, &'a str, usize), Vec<(f64, f64)>);
    let mut out = String::new();
    let mut blocks: Vec<Block> = Vec::new();
    for c in &report.cells {
        let key = (c.n, c.pattern.as_str(), c.k);
        match blocks.iter_mut().find(|b| b.0 == key) {
            Some(b) => b.1.push((c.c, c.success_rate())),
            None => blocks.push((key, vec![(c.c, c.success_rate())])),
        }
    }
    for (i, ((n, pattern, k), pts)) in blocks.into_iter().enumerate() {
        if i > 0 {
            out.push_str("\n\n");
        }
        let _ = writeln!(out, "# n={n} pattern={pattern} k={k}");
        let _ = writeln!(out, "# C success_rate");
        for (c, r) in pts {
            let _ = writeln!(out, "{c} {r:.4}");
        }
    }
    out
}

pub fn scan_to_csv(scan: &ScanReport) -> Result<String, HarnessError> {
    let grid = &scan.report.spec.c_grid;
    let mut header = vec!["n".to_string(), "pattern".into(), "k".into(), "c_star".into()];
    header.extend(grid.iter().map(|c| format!("rate@{c}")));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = scan.rows.iter().map(|r| {
        let mut row = vec![
            r.n.to_string(),
            r.pattern.clone(),
            r.k.to_string(),
            r.c_star.map_or_else(|| "above-grid".into(), |c| c.to_string()),
        ];
        row.extend(r.rates.iter().map(|x| format!("{x:.4}")));
        row
    });
    csv_string(&header, rows)
}

pub fn sweep_to_csv(sweep: &SweepReport) -> Result<String, HarnessError> {
    let header = ["k", "pattern", "found", "strategy", "verdict", "stage", "oracle"];
    let opt = |o: Option<String>| o.unwrap_or_default();
    let rows = sweep.rows.iter().map(|r| {
        vec![
            r.k.to_string(),
            r.pattern.clone(),
            r.found.to_string(),
            serde_tag(&r.strategy),
            opt(r.verdict.as_ref().map(serde_tag)),
            opt(r.stage.clone()),
            opt(r.oracle.map(|b| b.to_string())),
        ]
    });
    csv_string(&header, rows)
}

/// Writes `report` to `path`, or to stdout when there is none.
pub fn emit(report: &TrialReport, format: Format, path: Option<&Path>) -> Result<(), HarnessError> {
    let text = match format {
        Format::Csv => to_csv(report)?,
        Format::Json => to_json(report),
        Format::Plotdata => to_plotdata(report),
    };
    write_text(&text, path)
}

pub fn write_text(text: &str, path: Option<&Path>) -> Result<(), HarnessError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
