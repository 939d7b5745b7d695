//! Case identifiers, run tiers, and running one case end to end.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, AlgebraResult};
use crate::config::{catalog_axets, Shape};
use crate::engine::{construct, resume, Budget, Checkpoint, CheckpointError, Construction, Verdict};
use crate::expected::CaseOutcome;
use crate::permgrp::{GroupError, MarkedGroup};

/// `group/axes/shape`, e.g. `S4/3+6+6/6A 4A (2A)^3`. The shape part is the
/// per-orbit shape name, or a component name when that is unambiguous.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CaseId {
    pub group: String,
    pub axes: String,
    pub shape: String,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}/{}", self.group, self.axes, self.shape)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CaseError {
    #[error("malformed case id {0:?}; expected group/axes/shape")]
    Malformed(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("no axes pattern {0} for this group")]
    UnknownAxes(String),
    #[error("no shape {0}")]
    UnknownShape(String),
    #[error("shape {0} is ambiguous; use the per-orbit name")]
    Ambiguous(String),
}

impl FromStr for CaseId {
    type Err = CaseError;

    fn from_str(s: &str) -> Result<Self, CaseError> {
        let mut parts = s.splitn(3, '/');
        match (parts.next(), parts.next(), parts.next()) {
            (Some(g), Some(a), Some(sh)) if !g.is_empty() && !a.is_empty() && !sh.is_empty() => {
                Ok(CaseId { group: g.into(), axes: a.into(), shape: sh.trim().into() })
            }
            _ => Err(CaseError::Malformed(s.into())),
        }
    }
}

/// A resolved case.
#[derive(Clone, Debug)]
pub struct Case {
    pub id: CaseId,
    pub group: Arc<MarkedGroup>,
    pub shape: Shape,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    /// Groups of order at most 12 and S4 on 6 axes.
    Fast,
    Full,
}

impl FromStr for Tier {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fast" => Ok(Tier::Fast),
            "full" => Ok(Tier::Full),
            _ => Err(format!("unknown tier {s:?}")),
        }
    }
}

impl Tier {
    pub fn contains(self, group: &MarkedGroup, axes: &str) -> bool {
        match self {
            Tier::Full => true,
            Tier::Fast => group.order() <= 12 || (group.name == "S4" && axes == "6"),
        }
    }
}

/// All cases, in enumeration order, optionally for one group.
pub fn all_cases(group: Option<&str>) -> Result<Vec<Case>, GroupError> {
    let mut out = Vec::new();
    for (g, a) in catalog_axets(group)? {
        let axes = a.pattern_id();
        for s in a.shapes {
            let id = CaseId { group: g.name.clone(), axes: axes.clone(), shape: s.name() };
            out.push(Case { id, group: g.clone(), shape: s });
        }
    }
    Ok(out)
}

pub fn tier_cases(tier: Tier) -> Vec<Case> {
    all_cases(None).expect("bundled catalog").into_iter().filter(|c| tier.contains(&c.group, &c.id.axes)).collect()
}

pub fn resolve(id: &CaseId) -> Result<Case, CaseError> {
    let cases: Vec<Case> = all_cases(Some(&id.group))?.into_iter().filter(|c| c.id.axes == id.axes).collect();
    if cases.is_empty() {
        return Err(CaseError::UnknownAxes(id.axes.clone()));
    }
    if let Some(c) = cases.iter().find(|c| c.id.shape == id.shape) {
        return Ok(c.clone());
    }
    let mut by_component = cases.into_iter().filter(|c| c.shape.component_name() == id.shape);
    match (by_component.next(), by_component.next()) {
        (Some(c), None) => Ok(c),
        (Some(_), Some(_)) => Err(CaseError::Ambiguous(id.shape.clone())),
        _ => Err(CaseError::UnknownShape(id.shape.clone())),
    }
}

/// Everything produced by running one case.
#[derive(Clone, Debug)]
pub struct CaseRun {
    pub outcome: CaseOutcome,
    pub construction: Construction,
    pub analysis: Option<AlgebraResult>,
    pub wall: Duration,
}

pub fn run_case(case: &Case, budget: &Budget) -> CaseRun {
    run_case_from(case, budget, None).expect("fresh runs need no checkpoint")
}

/// Like [`run_case`], continuing from `start` when given.
pub fn run_case_from(case: &Case, budget: &Budget, start: Option<Checkpoint>) -> Result<CaseRun, CheckpointError> {
    let t = Instant::now();
    let c = match start {
        Some(cp) => resume(&case.shape, cp, budget)?,
        None => construct(&case.shape, budget),
    };
    let analysis = c.algebra.as_ref().map(|a| analyze(a, &c.axes, &case.shape));
    let outcome = CaseOutcome {
        group: case.id.group.clone(),
        axes: case.id.axes.clone(),
        shape: case.id.shape.clone(),
        components: case.shape.component_name(),
        verdict: c.verdict,
        dim: (c.verdict == Verdict::Completed).then_some(c.state.dim),
        m: analysis.as_ref().and_then(|r| r.m_closure),
        form: analysis.as_ref().map(|r| r.form_kind),
        primitive: analysis.as_ref().map(|r| r.primitive),
    };
    Ok(CaseRun { outcome, construction: c, analysis, wall: t.elapsed() })
}
