//! Algebra and summary tables from stored records, with a diff against the
//! bundled published values.

use anyhow::Result;
use axialforge::engine::Verdict;
use axialforge::expected::{diff, summarize, CaseOutcome, Mismatch, SummaryRow};
use serde::Serialize;

use crate::store::RunRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Md,
}

#[derive(Serialize)]
pub struct AlgebraLine {
    pub group: String,
    pub axes: String,
    pub shape: String,
    pub components: String,
    pub dim: String,
    pub m: String,
    pub form: String,
    pub primitive: String,
    /// Dimension of the quotient by the form's radical, when the form is degenerate.
    pub radical_quotient: String,
}

#[derive(Serialize)]
pub struct Report {
    pub algebras: Vec<AlgebraLine>,
    pub summary: Vec<SummaryRow>,
    pub diff: Vec<Mismatch>,
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or(String::new(), |x| x.to_string())
}

pub fn build(records: &[RunRecord]) -> Report {
    let algebras = records
        .iter()
        .filter(|r| r.verdict != Verdict::Collapsed)
        .map(|r| AlgebraLine {
            group: r.case.group.clone(),
            axes: r.case.axes.clone(),
            shape: r.case.shape.clone(),
            components: r.components.clone(),
            dim: if r.verdict == Verdict::Incomplete { "?".into() } else { opt(r.dim) },
            m: opt(r.m),
            form: r.form.map_or(String::new(), |f| f.as_str().to_string()),
            primitive: opt(r.primitive),
            radical_quotient: opt(r.radical_quotient_dim),
        })
        .collect();
    let outcomes: Vec<CaseOutcome> = records.iter().map(RunRecord::outcome).collect();
    // Keep summary rows in the order the records came in.
    let mut summary = summarize(&outcomes);
    let pos = |s: &SummaryRow| records.iter().position(|r| r.case.group == s.group && r.case.axes == s.axes);
    summary.sort_by_key(|s| pos(s));
    Report { algebras, summary, diff: diff(&outcomes) }
}

fn md_table(out: &mut String, header: &[&str], rows: Vec<Vec<String>>) {
    out.push_str(&format!("| {} |\n", header.join(" | ")));
    out.push_str(&format!("|{}\n", "---|".repeat(header.len())));
    for r in rows {
        out.push_str(&format!("| {} |\n", r.join(" | ")));
    }
}

const ALG_HEADER: [&str; 8] = ["group", "axes", "shape", "dim", "m", "form", "primitive", "radical quotient"];
const SUM_HEADER: [&str; 6] = ["group", "axes", "shapes", "collapsing", "nontrivial", "incomplete"];
const DIFF_HEADER: [&str; 5] = ["group", "axes", "shape", "expected", "found"];

fn alg_rows(r: &Report) -> Vec<Vec<String>> {
    r.algebras
        .iter()
        .map(|a| {
            vec![
                a.group.clone(),
                a.axes.clone(),
                a.components.clone(),
                a.dim.clone(),
                a.m.clone(),
                a.form.clone(),
                a.primitive.clone(),
                a.radical_quotient.clone(),
            ]
        })
        .collect()
}

fn sum_rows(r: &Report) -> Vec<Vec<String>> {
    r.summary
        .iter()
        .map(|s| {
            vec![
                s.group.clone(),
                s.axes.clone(),
                s.shapes.to_string(),
                s.collapsing.to_string(),
                s.nontrivial.to_string(),
                s.incomplete.to_string(),
            ]
        })
        .collect()
}

fn diff_rows(r: &Report) -> Vec<Vec<String>> {
    r.diff
        .iter()
        .map(|d| vec![d.group.clone(), d.axes.clone(), d.shape.clone(), d.expected.clone(), d.found.clone()])
        .collect()
}

pub fn render(r: &Report, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(r)? + "\n",
        Format::Md => {
            let mut out = String::from("## Algebras\n\n");
            md_table(&mut out, &ALG_HEADER, alg_rows(r));
            out.push_str("\n## Summary\n\n");
            md_table(&mut out, &SUM_HEADER, sum_rows(r));
            out.push_str(&format!("\n## Differences from published values ({})\n\n", r.diff.len()));
            md_table(&mut out, &DIFF_HEADER, diff_rows(r));
            out
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
            for (name, header, rows) in [
                ("algebras", &ALG_HEADER[..], alg_rows(r)),
                ("summary", &SUM_HEADER[..], sum_rows(r)),
                ("diff", &DIFF_HEADER[..], diff_rows(r)),
            ] {
                w.write_record(std::iter::once("table").chain(header.iter().copied()))?;
                for row in rows {
                    w.write_record(std::iter::once(name.to_string()).chain(row))?;
                }
            }
            String::from_utf8(w.into_inner()?)?
        }
    })
}
