mod report;
mod store;
mod verify;

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use axialforge::cases::{all_cases, resolve, run_case_from, tier_cases, Case, CaseId, Tier};
use axialforge::engine::{checkpoint_load, checkpoint_save, Budget, Verdict};
use clap::{Parser, Subcommand};
use rayon::prelude::*;

use report::Format;
use store::{RunRecord, Store, StoredAlgebra};
use verify::{verify_record, Verified};

#[derive(Parser)]
#[command(name = "axialforge", version, about = "Axial algebras of Monster type for minimal 3-generated groups")]
struct Cli {
    /// Result store directory.
    #[arg(long, global = true, env = "AXIALFORGE_STORE", default_value = "axialforge-store")]
    store: PathBuf,
    /// Output format for tables.
    #[arg(long, global = true, value_enum, default_value = "md")]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List axets and shapes with counts per group and axes.
    Enumerate {
        /// Only this group, by catalog name.
        #[arg(long)]
        group: Option<String>,
    },
    /// Construct and analyze cases, saving records to the store.
    Construct {
        /// Case id `group/axes/shape`; repeatable.
        #[arg(long)]
        case: Vec<String>,
        /// Run every case in a tier: `fast` (small groups) or `full`.
        #[arg(long)]
        tier: Option<Tier>,
        /// Run every case of one group.
        #[arg(long)]
        group: Option<String>,
        /// Cases run in parallel.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Most expansion rounds per case.
        #[arg(long)]
        budget_expansions: Option<usize>,
        /// Largest dimension allowed after a reduction.
        #[arg(long)]
        budget_dim: Option<usize>,
        /// Largest dimension allowed right after an expansion.
        #[arg(long)]
        budget_expanded_dim: Option<usize>,
        /// Re-run cases that already finished and ignore checkpoints.
        #[arg(long)]
        force: bool,
    },
    /// Write algebra and summary tables with differences from published values.
    Report {
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check every completed algebra in the store.
    Verify,
}

enum Failure {
    Usage(anyhow::Error),
    Verification,
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Enumerate { group } => enumerate(group.as_deref(), cli.format),
        Cmd::Construct { case, tier, group, jobs, budget_expansions, budget_dim, budget_expanded_dim, force } => {
            let mut budget = Budget::default();
            if let Some(x) = budget_expansions {
                budget.max_expansions = *x;
            }
            if let Some(x) = budget_dim {
                budget.max_dim = *x;
            }
            if let Some(x) = budget_expanded_dim {
                budget.max_expanded_dim = *x;
            }
            select(case, *tier, group.as_deref()).and_then(|cases| construct(&cli.store, cases, &budget, *jobs, *force))
        }
        Cmd::Report { out } => report_cmd(&cli.store, cli.format, out.as_deref()),
        Cmd::Verify => verify_cmd(&cli.store),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn enumerate(group: Option<&str>, format: Format) -> Result<(), Failure> {
    let cases = all_cases(group).map_err(|e| Failure::Usage(e.into()))?;
    let names: Vec<String> = cases.iter().map(|c| c.shape.component_name()).collect();
    let mut counts: Vec<(String, String, usize)> = Vec::new();
    for c in &cases {
        match counts.last_mut() {
            Some((g, a, n)) if *g == c.id.group && *a == c.id.axes => *n += 1,
            _ => counts.push((c.id.group.clone(), c.id.axes.clone(), 1)),
        }
    }
    match format {
        Format::Json => {
            #[derive(serde::Serialize)]
            struct Listing<'a> {
                cases: Vec<(String, &'a str)>,
                counts: &'a [(String, String, usize)],
            }
            let listing = Listing {
                cases: cases.iter().zip(&names).map(|(c, n)| (c.id.to_string(), n.as_str())).collect(),
                counts: &counts,
            };
            println!("{}", serde_json::to_string_pretty(&listing).map_err(anyhow::Error::from)?);
        }
        Format::Csv => {
            println!("case,components");
            for (c, n) in cases.iter().zip(&names) {
                println!("{},{n}", c.id);
            }
            println!("group,axes,shapes");
            for (g, a, n) in &counts {
                println!("{g},{a},{n}");
            }
        }
        Format::Md => {
            println!("| case | components |\n|---|---|");
            for (c, n) in cases.iter().zip(&names) {
                println!("| {} | {n} |", c.id);
            }
            println!("\n| group | axes | shapes |\n|---|---|---|");
            for (g, a, n) in &counts {
                println!("| {g} | {a} | {n} |");
            }
        }
    }
    Ok(())
}

fn select(ids: &[String], tier: Option<Tier>, group: Option<&str>) -> Result<Vec<Case>, Failure> {
    let usage = |e: anyhow::Error| Failure::Usage(e);
    if !ids.is_empty() {
        if tier.is_some() || group.is_some() {
            return Err(usage(anyhow!("--case cannot be combined with --tier or --group")));
        }
        return ids
            .iter()
            .map(|s| {
                let id: CaseId = s.parse().map_err(|e: axialforge::cases::CaseError| usage(e.into()))?;
                resolve(&id).map_err(|e| usage(e.into()))
            })
            .collect();
    }
    if let Some(g) = group {
        all_cases(Some(g)).map_err(|e| usage(e.into()))?;
    }
    let cases = match tier {
        Some(t) => tier_cases(t),
        None if group.is_some() => all_cases(group).map_err(|e| usage(e.into()))?,
        None => return Err(usage(anyhow!("give --case, --tier or --group"))),
    };
    Ok(cases.into_iter().filter(|c| group.is_none_or(|g| c.id.group == g)).collect())
}

fn construct(root: &Path, cases: Vec<Case>, budget: &Budget, jobs: usize, force: bool) -> Result<(), Failure> {
    let store = Store::open(root)?;
    let order: HashMap<CaseId, usize> =
        all_cases(None).map_err(anyhow::Error::from)?.into_iter().enumerate().map(|(i, c)| (c.id, i)).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(anyhow::Error::from)?;
    let lines: Vec<Result<String>> = pool.install(|| {
        cases
            .par_iter()
            .map(|case| -> Result<String> {
                let prev = store.get(&case.id)?;
                if !force {
                    if let Some(p) = prev.as_ref().filter(|p| p.verdict != Verdict::Incomplete) {
                        return Ok(format!("{} [{}]: {:?} (stored)", case.id, p.components, p.verdict));
                    }
                }
                let start = match (force, store.checkpoint(&case.id)) {
                    (false, Some(bytes)) => checkpoint_load(&bytes).ok(),
                    _ => None,
                };
                let resumed = start.is_some();
                let run = run_case_from(case, budget, start).with_context(|| format!("{}", case.id))?;
                let c = &run.construction;
                let a = run.analysis.as_ref();
                let rec = RunRecord {
                    case: case.id.clone(),
                    order: order.get(&case.id).copied().unwrap_or(usize::MAX),
                    components: run.outcome.components.clone(),
                    verdict: run.outcome.verdict,
                    dim: run.outcome.dim,
                    m: run.outcome.m,
                    form: run.outcome.form,
                    primitive: run.outcome.primitive,
                    radical_quotient_dim: a.and_then(|a| a.radical_quotient.as_ref()).map(|q| q.dim),
                    wall_ms: run.wall.as_millis(),
                    budget: *budget,
                    expansions: c.expansions,
                    checkpoint: None,
                    algebra: c.algebra.as_ref().map(|alg| StoredAlgebra {
                        algebra: alg.clone(),
                        axes: c.axes.clone(),
                        form: a.and_then(|a| a.form.as_ref()).map(|f| f.form.clone()),
                    }),
                };
                let cp = (run.outcome.verdict == Verdict::Incomplete).then(|| checkpoint_save(&case.shape, &c.state));
                store.put(rec, cp.as_deref())?;
                let o = &run.outcome;
                Ok(format!(
                    "{} [{}]: {:?}{}{}{}{} ({:.2?}{})",
                    case.id,
                    o.components,
                    o.verdict,
                    o.dim.map_or(String::new(), |d| format!(" dim {d}")),
                    o.m.map_or(String::new(), |m| format!(" m {m}")),
                    o.form.map_or(String::new(), |f| format!(" form {}", f.as_str())),
                    o.primitive.map_or(String::new(), |p| format!(" primitive {p}")),
                    run.wall,
                    if resumed { ", resumed" } else { "" }
                ))
            })
            .collect()
    });
    store.write_index()?;
    let mut failed = false;
    for l in lines {
        match l {
            Ok(s) => println!("{s}"),
            Err(e) => {
                failed = true;
                eprintln!("error: {e:#}");
            }
        }
    }
    if failed {
        Err(Failure::Other(anyhow!("some cases failed")))
    } else {
        Ok(())
    }
}

fn report_cmd(root: &Path, format: Format, out: Option<&Path>) -> Result<(), Failure> {
    let records = if root.exists() { Store::open(root)?.all()? } else { Vec::new() };
    let text = report::render(&report::build(&records), format)?;
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn verify_cmd(root: &Path) -> Result<(), Failure> {
    let store = Store::open(root)?;
    let mut failed = false;
    for rec in store.all()? {
        match verify_record(&rec) {
            Verified::Skipped(why) => println!("{}: skipped ({why})", rec.case),
            Verified::Checked(rep) if rep.passed() => println!("{}: pass ({} checks)", rec.case, rep.checks.len()),
            Verified::Checked(rep) => {
                failed = true;
                let names: Vec<String> =
                    rep.failures().map(|c| format!("{} {}", c.name, c.detail).trim().to_string()).collect();
                println!("{}: FAIL {}", rec.case, names.join("; "));
            }
        }
    }
    if failed {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}
