//! Values transcribed from the published tables, and a diff of computed
//! outcomes against them.
//!
//! Published shapes name one label per connected component of the shape
//! graph, in an order we do not reproduce, so rows are matched by the
//! multiset of component labels within a group and axes pattern.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::analysis::FormKind;
use crate::engine::Verdict;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub group: String,
    pub axes: String,
    pub shapes: usize,
    pub collapsing: usize,
    pub nontrivial: usize,
    pub incomplete: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraRow {
    pub group: String,
    pub axes: String,
    pub shape: String,
    pub minimal: bool,
    /// Comma-separated alternatives; `?` for not completed, `0` for collapse.
    pub dim: String,
    pub m: String,
    pub form: String,
    /// The published value comes from a one-parameter family over Q[t].
    #[serde(default)]
    pub parametric: bool,
}

impl AlgebraRow {
    /// The published value depends on a parameter, or several non-isomorphic
    /// algebras share the shape. Linear reduction over Q cannot single one out.
    pub fn needs_nonlinear(&self) -> bool {
        self.parametric || self.dim.split(',').filter(|d| !matches!(*d, "0" | "?")).count() > 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseRow {
    pub group: String,
    /// An axes pattern; matches every axet sharing it.
    pub axes: String,
    pub shape: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalRow {
    pub group: String,
    pub axes: String,
    pub shape: String,
    pub dim: usize,
    pub radical: usize,
    pub quotient_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub summary: Vec<SummaryRow>,
    pub algebras: Vec<AlgebraRow>,
    pub collapses: Vec<CollapseRow>,
    pub radical_quotients: Vec<RadicalRow>,
}

pub fn expected() -> &'static Expected {
    static CELL: OnceLock<Expected> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(include_str!("../data/expected.json")).expect("bundled expected values"))
}

/// Sorted component labels of a shape name such as `6A (2A)^2 2B`.
pub fn shape_key(name: &str) -> Vec<String> {
    let mut out = Vec::new();
    for part in name.split_whitespace() {
        match part.strip_prefix('(').and_then(|p| p.split_once(")^")) {
            Some((label, k)) => {
                let k: usize = k.parse().unwrap_or(1);
                out.extend(std::iter::repeat_n(label.to_string(), k));
            }
            None => out.push(part.to_string()),
        }
    }
    out.sort();
    out
}

/// Axes pattern without the `#n` suffix that separates axets.
pub fn base_pattern(axes: &str) -> &str {
    axes.split('#').next().unwrap_or(axes)
}

/// Result of one case, as compared against the tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub group: String,
    pub axes: String,
    pub shape: String,
    pub components: String,
    pub verdict: Verdict,
    pub dim: Option<usize>,
    pub m: Option<usize>,
    pub form: Option<FormKind>,
    pub primitive: Option<bool>,
}

impl CaseOutcome {
    fn dim_token(&self) -> String {
        match self.verdict {
            Verdict::Completed => self.dim.map_or("?".into(), |d| d.to_string()),
            Verdict::Collapsed => "0".into(),
            Verdict::Incomplete => "?".into(),
        }
    }

    fn matches(&self, row: &AlgebraRow) -> bool {
        let dims: Vec<&str> = row.dim.split(',').collect();
        let tok = self.dim_token();
        let Some(pos) = dims.iter().position(|d| *d == tok) else { return false };
        if self.verdict != Verdict::Completed {
            return true;
        }
        let ms: Vec<&str> = row.m.split(',').collect();
        let m_ok = match (self.m, ms.get(pos).or(ms.first())) {
            (Some(m), Some(want)) => m.to_string() == *want || ms.contains(&m.to_string().as_str()),
            _ => false,
        };
        let forms: Vec<&str> = row.form.split(',').collect();
        let want_form = forms.get(pos).or(forms.first()).copied().unwrap_or("");
        let form_ok = match (want_form, self.form) {
            ("yes", Some(f)) => f != FormKind::None,
            (w, Some(f)) => w == f.as_str(),
            _ => false,
        };
        m_ok && form_ok
    }
}

/// One disagreement with the tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub group: String,
    pub axes: String,
    pub shape: String,
    pub expected: String,
    pub found: String,
}

fn describe(o: &CaseOutcome) -> String {
    match o.verdict {
        Verdict::Completed => format!(
            "dim {} m {} form {}",
            o.dim.map_or("-".into(), |d| d.to_string()),
            o.m.map_or("-".into(), |m| m.to_string()),
            o.form.map_or("-", |f| f.as_str())
        ),
        Verdict::Collapsed => "collapsed".into(),
        Verdict::Incomplete => "incomplete".into(),
    }
}

fn describe_row(r: &AlgebraRow) -> String {
    format!("dim {} m {} form {}", r.dim, r.m, r.form)
}

/// Outcome counts per group and axes pattern, as in the summary table.
pub fn summarize(outcomes: &[CaseOutcome]) -> Vec<SummaryRow> {
    let mut rows: BTreeMap<(String, String), SummaryRow> = BTreeMap::new();
    for o in outcomes {
        let r = rows.entry((o.group.clone(), o.axes.clone())).or_insert_with(|| SummaryRow {
            group: o.group.clone(),
            axes: o.axes.clone(),
            shapes: 0,
            collapsing: 0,
            nontrivial: 0,
            incomplete: 0,
        });
        r.shapes += 1;
        match o.verdict {
            Verdict::Completed => r.nontrivial += 1,
            Verdict::Collapsed => r.collapsing += 1,
            Verdict::Incomplete => r.incomplete += 1,
        }
    }
    rows.into_values().collect()
}

/// Compares outcomes against every table row whose group and axes were
/// covered. Rows for axets not present in `outcomes` are skipped.
pub fn diff(outcomes: &[CaseOutcome]) -> Vec<Mismatch> {
    let exp = expected();
    let mut out = Vec::new();
    let mut covered: BTreeMap<(String, String), Vec<&CaseOutcome>> = BTreeMap::new();
    for o in outcomes {
        covered.entry((o.group.clone(), o.axes.clone())).or_default().push(o);
    }
    for row in summarize(outcomes) {
        let Some(want) = exp.summary.iter().find(|s| s.group == row.group && s.axes == row.axes) else { continue };
        if row.shapes < want.shapes && row.shapes < full_count(&row.group, &row.axes) {
            // Only some shapes of this row were run.
            continue;
        }
        if want.shapes != row.shapes {
            out.push(Mismatch {
                group: row.group.clone(),
                axes: row.axes.clone(),
                shape: String::new(),
                expected: format!("{} shapes", want.shapes),
                found: format!("{} shapes", row.shapes),
            });
            continue;
        }
        if (want.collapsing, want.nontrivial, want.incomplete) != (row.collapsing, row.nontrivial, row.incomplete) {
            out.push(Mismatch {
                group: row.group.clone(),
                axes: row.axes.clone(),
                shape: String::new(),
                expected: format!(
                    "{}/{}/{} collapsing/nontrivial/incomplete",
                    want.collapsing, want.nontrivial, want.incomplete
                ),
                found: format!(
                    "{}/{}/{} collapsing/nontrivial/incomplete",
                    row.collapsing, row.nontrivial, row.incomplete
                ),
            });
        }
    }
    for ((group, axes), cases) in &covered {
        let rows: Vec<&AlgebraRow> = exp.algebras.iter().filter(|r| &r.group == group && &r.axes == axes).collect();
        let mut by_key: BTreeMap<Vec<String>, (Vec<&AlgebraRow>, Vec<&CaseOutcome>)> = BTreeMap::new();
        for r in &rows {
            by_key.entry(shape_key(&r.shape)).or_default().0.push(r);
        }
        for c in cases.iter().filter(|c| c.verdict != Verdict::Collapsed) {
            by_key.entry(shape_key(&c.components)).or_default().1.push(c);
        }
        let ran: std::collections::BTreeSet<Vec<String>> = cases.iter().map(|c| shape_key(&c.components)).collect();
        for (key, (rs, cs)) in &by_key {
            if !ran.contains(key) {
                continue;
            }
            let name = rs.first().map(|r| r.shape.clone()).unwrap_or_else(|| cs[0].components.clone());
            if !assignable(rs, cs) {
                out.push(Mismatch {
                    group: group.clone(),
                    axes: axes.clone(),
                    shape: name,
                    expected: if rs.is_empty() {
                        "collapsed".into()
                    } else {
                        rs.iter().map(|r| describe_row(r)).collect::<Vec<_>>().join("; ")
                    },
                    found: if cs.is_empty() {
                        "collapsed".into()
                    } else {
                        cs.iter().map(|c| describe(c)).collect::<Vec<_>>().join("; ")
                    },
                });
            }
        }
    }
    for row in &exp.collapses {
        let cands: Vec<&CaseOutcome> = outcomes
            .iter()
            .filter(|o| o.group == row.group && base_pattern(&o.axes) == base_pattern(&row.axes))
            .filter(|o| shape_key(&o.components) == shape_key(&row.shape))
            .collect();
        for c in cands.iter().filter(|c| c.verdict != Verdict::Collapsed) {
            out.push(Mismatch {
                group: row.group.clone(),
                axes: c.axes.clone(),
                shape: row.shape.clone(),
                expected: "collapsed".into(),
                found: describe(c),
            });
        }
    }
    out
}

/// Number of shapes the enumeration gives for a row; zero if unknown.
fn full_count(group: &str, axes: &str) -> usize {
    crate::config::catalog_axets(Some(group))
        .map(|v| v.iter().find(|(_, a)| a.pattern_id() == axes).map_or(0, |(_, a)| a.shapes.len()))
        .unwrap_or(0)
}

/// Whether the outcomes can be paired one-to-one with the rows.
fn assignable(rows: &[&AlgebraRow], cases: &[&CaseOutcome]) -> bool {
    if rows.len() != cases.len() {
        return false;
    }
    fn go(rows: &[&AlgebraRow], cases: &[&CaseOutcome], used: &mut Vec<bool>) -> bool {
        let Some((c, rest)) = cases.split_first() else { return true };
        for i in 0..rows.len() {
            if !used[i] && c.matches(rows[i]) {
                used[i] = true;
                if go(rows, rest, used) {
                    return true;
                }
                used[i] = false;
            }
        }
        false
    }
    go(rows, cases, &mut vec![false; rows.len()])
}
