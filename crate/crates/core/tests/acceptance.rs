//! Acceptance criteria, one pass/fail line each. Runs the fast tier plus a
//! few named cases once and checks every criterion against those runs.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use axialforge::analysis::FormKind;
use axialforge::cases::{run_case, tier_cases, Case, CaseRun, Tier};
use axialforge::config::catalog_axets;
use axialforge::engine::{Budget, Verdict};
use axialforge::expected::{base_pattern, expected, shape_key};
use axialforge::ns::{ns, verify_ns, NsLabel};

use common::*;

type Outcome = Result<String, String>;

struct Runs {
    runs: Vec<(Case, CaseRun)>,
    elapsed: Duration,
}

impl Runs {
    fn find(&self, group: &str, axes: &str, components: &str) -> Vec<&(Case, CaseRun)> {
        let key = shape_key(components);
        self.runs
            .iter()
            .filter(|(c, _)| c.id.group == group && c.id.axes == axes && shape_key(&c.shape.component_name()) == key)
            .collect()
    }

    fn completed(&self) -> impl Iterator<Item = &(Case, CaseRun)> {
        self.runs.iter().filter(|(_, r)| r.outcome.verdict == Verdict::Completed)
    }
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut fails = Vec::new();
    for &l in NsLabel::ALL.iter() {
        let rep = verify_ns(ns(l));
        if !rep.passed() {
            fails.push(format!("{}: {:?}", l.as_str(), rep.failures().map(|c| &c.name).collect::<Vec<_>>()));
        }
    }
    let dim6 = ns(NsLabel::SixA).dim();
    let el = t.elapsed();
    if dim6 != 8 {
        fails.push(format!("dim 6A = {dim6}"));
    }
    if el >= Duration::from_secs(1) {
        fails.push(format!("took {el:.2?}"));
    }
    if fails.is_empty() {
        Ok(format!("8 algebras verified, dim 6A = 8, {el:.2?}"))
    } else {
        Err(fails.join("; "))
    }
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let mut ours = BTreeMap::new();
    for (g, a) in catalog_axets(None).map_err(|e| e.to_string())? {
        ours.insert((g.name.clone(), a.pattern_id()), a.shapes.len());
    }
    let el = t.elapsed();
    let mut fails = Vec::new();
    for r in &expected().summary {
        match ours.remove(&(r.group.clone(), r.axes.clone())) {
            Some(n) if n == r.shapes => {}
            Some(n) => fails.push(format!("{} {}: {} shapes, table {}", r.group, r.axes, n, r.shapes)),
            None => fails.push(format!("{} {}: missing", r.group, r.axes)),
        }
    }
    for ((g, a), n) in ours {
        fails.push(format!("{g} {a}: {n} shapes not in table"));
    }
    if el >= Duration::from_secs(60) {
        fails.push(format!("took {el:.2?}"));
    }
    if fails.is_empty() {
        Ok(format!("{} rows match, {el:.2?}", expected().summary.len()))
    } else {
        Err(fails.join("; "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Want {
    Alg(usize, usize, FormKind),
    Collapsed,
}

fn describe(r: &CaseRun) -> String {
    match r.outcome.verdict {
        Verdict::Completed => format!(
            "({}, {}, {})",
            r.outcome.dim.unwrap_or(0),
            r.outcome.m.map_or("-".into(), |m| m.to_string()),
            r.outcome.form.map_or("-", |f| f.as_str())
        ),
        v => format!("{v:?}"),
    }
}

fn meets(r: &CaseRun, w: Want) -> bool {
    let o = &r.outcome;
    match w {
        Want::Collapsed => o.verdict == Verdict::Collapsed,
        Want::Alg(d, m, f) => {
            o.verdict == Verdict::Completed
                && o.dim == Some(d)
                && o.m == Some(m)
                && o.form == Some(f)
                && o.primitive == Some(true)
        }
    }
}

fn criterion_3(runs: &Runs) -> Outcome {
    use FormKind::{Pos, Semi};
    use Want::*;
    let mut rows: Vec<(&str, &str, &str, Want)> = vec![
        ("1", "1+1+1", "(2B)^3", Alg(3, 1, Pos)),
        ("1", "1+1+1", "2A (2B)^2", Alg(4, 2, Pos)),
        ("1", "1+1+1", "(2A)^2 2B", Alg(6, 3, Pos)),
        ("S3", "1+3", "3A 2A", Alg(8, 2, Pos)),
        ("S3", "1+3", "3A 2B", Alg(5, 2, Pos)),
        ("S3", "1+3", "3C 2B", Alg(4, 1, Pos)),
        ("S3", "1+3", "3C 2A", Collapsed),
        ("2^2", "1+2+2", "4A (2A)^2", Alg(14, 3, Semi)),
        ("2^2", "1+2+2", "4A 2A 2B", Alg(10, 3, Pos)),
        ("2^2", "1+2+2", "4A (2B)^2", Alg(6, 2, Pos)),
        ("2^2", "1+2+2", "4B (2A)^2", Alg(5, 1, Pos)),
        ("2^2", "1+2+2", "4B 2A 2B", Alg(8, 2, Pos)),
        ("2^2", "1+2+2", "4B (2B)^2", Alg(6, 2, Pos)),
        ("D10", "1+5", "5A 2B", Alg(7, 2, Pos)),
        ("D10", "1+5", "5A 2A", Collapsed),
        ("D12", "2+6", "6A", Alg(10, 2, Pos)),
        ("S3", "1+3+3", "6A 2A 2B", Alg(13, 3, Pos)),
        ("S3", "1+3+3", "6A (2B)^2", Alg(9, 2, Pos)),
        ("S3", "1+3+3", "6A (2A)^2", Alg(8, 2, Pos)),
        ("S3", "3+3+3", "6A", Alg(13, 2, Pos)),
    ];
    // S4 on 6 axes: the four values, with shapes as in the algebra table.
    let s4: Vec<(usize, usize)> = vec![(13, 2), (13, 3), (9, 2), (6, 1)];
    let table: Vec<_> = expected().algebras.iter().filter(|r| r.group == "S4" && r.axes == "6").collect();
    let mut table_vals: Vec<(usize, usize)> =
        table.iter().map(|r| (r.dim.parse().unwrap_or(0), r.m.parse().unwrap_or(0))).collect();
    table_vals.sort();
    let mut want_vals = s4.clone();
    want_vals.sort();
    if table_vals != want_vals {
        return Err(format!("S4 on 6 rows in the bundled table are {table_vals:?}"));
    }
    for r in &table {
        rows.push(("S4", "6", &r.shape, Alg(r.dim.parse().unwrap(), r.m.parse().unwrap(), Pos)));
    }
    let mut fails = Vec::new();
    for (g, a, s, w) in &rows {
        let found = runs.find(g, a, s);
        match found.as_slice() {
            [(_, r)] if meets(r, *w) => {}
            [(_, r)] => fails.push(format!("{g}/{a}/{s}: {} want {w:?}", describe(r))),
            [] => fails.push(format!("{g}/{a}/{s}: no such shape")),
            _ => fails.push(format!("{g}/{a}/{s}: {} shapes share this name", found.len())),
        }
    }
    if fails.is_empty() {
        Ok(format!("{} cases match", rows.len()))
    } else {
        Err(fails.join("; "))
    }
}

fn criterion_4(runs: &Runs) -> Outcome {
    let mut fails = Vec::new();
    // The published name lists four labels while 2+2+4 shapes have five;
    // it is read as the unique 2+2+4 shape whose name begins with it.
    let prefix = "(4A)^2 (2A)^2 ";
    let cands: Vec<_> = runs
        .runs
        .iter()
        .filter(|(c, _)| c.id.group == "2^3" && base_pattern(&c.id.axes) == "2+2+4")
        .filter(|(c, _)| c.shape.component_name().starts_with(prefix))
        .collect();
    match cands.as_slice() {
        [(c, r)] if r.outcome.verdict == Verdict::Collapsed => {
            let _ = c;
        }
        [(c, r)] => fails.push(format!("2^3 {} {}: {}", c.id.axes, c.shape.component_name(), describe(r))),
        _ => fails.push(format!("2^3 2+2+4: {} shapes begin with {prefix:?}", cands.len())),
    }
    let s4 = runs.find("S4", "6+6+6", "6A (2A)^6");
    match s4.as_slice() {
        [(_, r)] if r.outcome.verdict == Verdict::Collapsed => {}
        [(_, r)] => fails.push(format!("S4 6+6+6 6A (2A)^6: {}", describe(r))),
        _ => fails.push(format!("S4 6+6+6 6A (2A)^6: {} matches", s4.len())),
    }
    if fails.is_empty() {
        Ok("2^3 2+2+4 (4A)^2 (2A)^2 2B and S4 6+6+6 6A (2A)^6 collapse".into())
    } else {
        Err(fails.join("; "))
    }
}

fn criterion_5(runs: &Runs) -> Outcome {
    // Component order is not canonical across conventions, so the name fixes
    // only the label multiset; exactly one shape with it may be nontrivial.
    let found = runs.find("2^3", "2+4+4", "4B 4A (2A)^2");
    let done: Vec<_> = found.iter().filter(|(_, r)| r.outcome.verdict == Verdict::Completed).collect();
    let [(_, r)] = done.as_slice() else {
        let v: Vec<String> =
            found.iter().map(|(c, r)| format!("{}: {}", c.shape.component_name(), describe(r))).collect();
        return Err(format!("{} completed among {}", done.len(), v.join(", ")));
    };
    let Some(a) = &r.analysis else { return Err(describe(r)) };
    let Some(q) = &a.radical_quotient else {
        return Err(format!("dim {} {} with no radical", a.dim, a.form_kind.as_str()));
    };
    let ok =
        a.dim == 16 && a.form_kind == FormKind::Semi && q.dim == 13 && q.form_kind == FormKind::Pos && q.shape_verified;
    let msg = format!(
        "dim {} {}, quotient dim {} {}, shape verified {}",
        a.dim,
        a.form_kind.as_str(),
        q.dim,
        q.form_kind.as_str(),
        q.shape_verified
    );
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion_6(runs: &Runs) -> Outcome {
    let mut n = 0;
    let mut fails = Vec::new();
    for (c, r) in runs.completed() {
        n += 1;
        let a = r.analysis.as_ref().unwrap();
        if !a.primitive || !matches!(a.form_kind, FormKind::Pos | FormKind::Semi) {
            fails.push(format!("{}: primitive {} form {}", c.id, a.primitive, a.form_kind.as_str()));
        }
    }
    if fails.is_empty() {
        Ok(format!("{n} completed algebras primitive with semi-definite or definite form"))
    } else {
        Err(fails.join("; "))
    }
}

fn criterion_7(runs: &Runs) -> Outcome {
    let mut fails = Vec::new();
    let mut n = 0;
    for (i, (c, r)) in runs.completed().enumerate() {
        n += 1;
        let alg = r.construction.algebra.as_ref().unwrap();
        let axes = &r.construction.axes;
        if let Err(e) = miyamoto_maps_are_involutive_automorphisms(alg, axes) {
            fails.push(format!("{}: {e}", c.id));
        }
        if let Err(e) = product_is_equivariant(&r.construction) {
            fails.push(format!("{}: {e}", c.id));
        }
        if closure_length(alg, axes) != r.outcome.m {
            fails.push(format!("{}: m {:?} but spans close at {:?}", c.id, r.outcome.m, closure_length(alg, axes)));
        }
        if let Some(f) = r.analysis.as_ref().and_then(|a| a.form.as_ref()) {
            if let Err(e) = signature_is_congruence_invariant(&f.form, 50, i as u64) {
                fails.push(format!("{}: {e}", c.id));
            }
        }
    }
    for id in ["S3/1+3/3A 2A", "S3/1+3+3/6A 2A 2B"] {
        if let Err(e) = checkpoint_resume_matches(&case(id)) {
            fails.push(e);
        }
    }
    if fails.is_empty() {
        Ok(format!("{n} completed algebras, 2 checkpoint resumes"))
    } else {
        Err(fails.join("; "))
    }
}

/// Declared out of reach: published "?" rows must come out incomplete,
/// and rows that need non-linear solving (a parameter over Q[t], or several
/// algebras on one shape) are listed rather than compared.
fn criterion_8(runs: &Runs) -> Outcome {
    let mut fails = Vec::new();
    let mut checked = 0;
    let mut declared = Vec::new();
    for row in &expected().algebras {
        let ran = runs.runs.iter().any(|(c, _)| c.id.group == row.group && c.id.axes == row.axes);
        if !ran {
            continue;
        }
        let found = runs.find(&row.group, &row.axes, &row.shape);
        if found.is_empty() {
            continue;
        }
        if row.needs_nonlinear() {
            let v: Vec<String> = found.iter().map(|(_, r)| describe(r)).collect();
            declared.push(format!(
                "{} {} {} (published {}): {}",
                row.group,
                row.axes,
                row.shape,
                row.dim,
                v.join(", ")
            ));
            continue;
        }
        if row.dim == "?" {
            checked += 1;
            if !found.iter().any(|(_, r)| r.outcome.verdict == Verdict::Incomplete) {
                let v: Vec<String> = found.iter().map(|(_, r)| describe(r)).collect();
                fails.push(format!("{} {} {}: {}", row.group, row.axes, row.shape, v.join(", ")));
            }
        }
    }
    if fails.is_empty() {
        Ok(format!(
            "{checked} unfinished rows in the executed tier are incomplete here; declared: {}; full tier and the minimal column not run",
            declared.join("; ")
        ))
    } else {
        Err(fails.join("; "))
    }
}

fn main() -> ExitCode {
    // Honour `cargo test -- --list` and name filters from the test runner.
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let mut lines: Vec<(usize, &str, Outcome)> = Vec::new();
    lines.push((1, "Norton-Sakuma suite", criterion_1()));
    lines.push((2, "shape counts", criterion_2()));
    let t = Instant::now();
    let mut cases = tier_cases(Tier::Fast);
    let extra = ["2^3/2+4+4/4B 4A (2A)^2", "S4/6+6+6/6A (2A)^6"];
    for id in extra {
        let c = case(id);
        if !cases.iter().any(|x| x.id == c.id) {
            cases.push(c);
        }
    }
    let budget = Budget::default();
    let runs = Runs {
        runs: cases
            .into_iter()
            .map(|c| {
                let r = run_case(&c, &budget);
                (c, r)
            })
            .collect(),
        elapsed: t.elapsed(),
    };
    println!("ran {} cases in {:.1?}", runs.runs.len(), runs.elapsed);
    lines.push((3, "fast-tier algebra table", criterion_3(&runs)));
    lines.push((4, "collapses", criterion_4(&runs)));
    lines.push((5, "radical quotient", criterion_5(&runs)));
    lines.push((6, "primitive with semi-definite form", criterion_6(&runs)));
    lines.push((7, "property suites", criterion_7(&runs)));
    lines.push((8, "declared out of reach", criterion_8(&runs)));
    let mut all = true;
    for (n, name, out) in &lines {
        match out {
            Ok(msg) => println!("criterion {n} ({name}): PASS - {msg}"),
            Err(msg) => {
                all = false;
                println!("criterion {n} ({name}): FAIL - {msg}");
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
