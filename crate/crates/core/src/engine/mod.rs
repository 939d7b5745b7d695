//! Construction of the universal algebra of a shape by alternating
//! expansion (adjoining formal products) and reduction (quotienting by
//! relations forced by the fusion law, the involutions and the prescribed
//! 2-generated subalgebras).

mod checkpoint;
mod partial;
mod relations;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

pub use checkpoint::{checkpoint_load, checkpoint_save, shape_ref, Checkpoint, CheckpointError, CHECKPOINT_VERSION};
pub use partial::{NsCopy, PartialAlgebra, Provenance};
pub use relations::{close_relations, find_relations, AxisRep};

use crate::algebra::Algebra;
use crate::config::Shape;
use crate::linalg::{Echelon, SparseVec};

/// Limits on a construction run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_expansions: usize,
    /// Largest dimension allowed after a reduction.
    pub max_dim: usize,
    /// Largest dimension allowed right after an expansion.
    pub max_expanded_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_expansions: 6, max_dim: 600, max_expanded_dim: 12_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Completed,
    Collapsed,
    Incomplete,
}

/// Outcome of [`construct`].
#[derive(Clone, Debug)]
pub struct Construction {
    pub verdict: Verdict,
    /// Present when completed.
    pub algebra: Option<Algebra>,
    pub axes: Vec<SparseVec>,
    /// Images of the basis under each generator of the group.
    pub gen_matrices: Vec<Vec<SparseVec>>,
    pub gen_elems: Vec<usize>,
    pub expansions: usize,
    pub peak_dim: usize,
    pub state: PartialAlgebra,
}

/// A word `w` in `gens` (indices) with `w_1 w_2 ... = target`, by BFS.
fn word_for(grp: &crate::permgrp::Group, gens: &[usize], target: usize) -> Vec<usize> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; grp.order()];
    let id = grp.identity();
    let mut seen = vec![false; grp.order()];
    seen[id] = true;
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        if x == target {
            break;
        }
        for (i, &g) in gens.iter().enumerate() {
            let y = grp.mul(x, g);
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, i));
                queue.push_back(y);
            }
        }
    }
    let mut word = Vec::new();
    let mut x = target;
    while let Some((p, i)) = prev[x] {
        word.push(i);
        x = p;
    }
    word.reverse();
    word
}

/// Starting state and axis representatives for a shape.
pub fn seed(shape: &Shape) -> (PartialAlgebra, Vec<AxisRep>) {
    let ax = &shape.axet;
    let grp = &ax.group.group;
    let mut gen_elems: Vec<usize> = ax.group.gens.iter().copied().filter(|&g| g != grp.identity()).collect();
    gen_elems.sort_unstable();
    gen_elems.dedup();
    let perms: Vec<Vec<usize>> =
        gen_elems.iter().map(|&g| ax.action[g].images().iter().map(|&i| i as usize).collect()).collect();
    let copies = shape
        .orbits
        .iter()
        .zip(&shape.labels)
        .map(|(o, &label)| NsCopy { label, sequence: o.sequence.clone(), images: None })
        .collect();
    let reps = ax
        .orbits
        .iter()
        .map(|r| AxisRep { axis: r.start, tau_word: word_for(grp, &gen_elems, ax.tau[r.start]) })
        .collect();
    (PartialAlgebra::seed(ax.len(), gen_elems, &perms, copies), reps)
}

fn collapsed(pa: &PartialAlgebra) -> bool {
    pa.dim == 0 || pa.axes.iter().any(|a| a.is_zero())
}

/// Applies relations until none remain. Returns false on collapse.
pub fn saturate(pa: &mut PartialAlgebra, reps: &[AxisRep]) -> bool {
    loop {
        pa.realize_copies();
        let rels = find_relations(pa, reps);
        if rels.is_empty() {
            return !collapsed(pa);
        }
        let closed = close_relations(pa, rels);
        pa.reduce(&closed);
        if collapsed(pa) {
            return false;
        }
    }
}

/// Echelon basis, reduced modulo `W`, of the invariant subspace spanned by
/// the axes and their products with `W`. When that adds nothing, all of
/// `V` is used instead.
fn axis_products(pa: &PartialAlgebra, reps: &[AxisRep]) -> Vec<SparseVec> {
    let k = pa.known;
    let mut ech = Echelon::new();
    for j in 0..k {
        ech.insert(SparseVec::unit(j));
    }
    let mut work = Vec::new();
    let mut gens: Vec<SparseVec> = pa.axes.clone();
    for r in reps {
        if pa.in_known(&pa.axes[r.axis]) {
            gens.extend(pa.ad_columns(&pa.axes[r.axis]));
        }
    }
    for v in gens {
        if ech.insert(v.clone()) {
            work.push(v);
        }
    }
    while let Some(v) = work.pop() {
        for g in 0..pa.gen_matrices.len() {
            let img = pa.act(&v, g);
            if ech.insert(img.clone()) {
                work.push(img);
            }
        }
    }
    if ech.rank() == k {
        for c in k..pa.dim {
            ech.insert(SparseVec::unit(c));
        }
    }
    let mut rows: Vec<SparseVec> = ech.rows().iter().filter(|r| !r.within(k)).cloned().collect();
    rows.sort_by_key(|r| r.max_index());
    rows
}

/// Runs from a given state; used for both fresh starts and resumed
/// checkpoints. Expands all of `V` when that fits the budget and only the
/// span of the axis products otherwise.
pub fn run(mut pa: PartialAlgebra, reps: &[AxisRep], budget: &Budget) -> Construction {
    let mut peak = pa.dim;
    let verdict = loop {
        if !saturate(&mut pa, reps) {
            break Verdict::Collapsed;
        }
        if pa.is_total() {
            break Verdict::Completed;
        }
        if pa.dim > budget.max_dim || pa.expansions >= budget.max_expansions {
            break Verdict::Incomplete;
        }
        let size = |m: usize| pa.dim + (m * (m + 1) - pa.known * (pa.known + 1)) / 2;
        if size(pa.dim) <= budget.max_expanded_dim {
            pa.expand();
        } else {
            let rows = axis_products(&pa, reps);
            if size(pa.known + rows.len()) > budget.max_expanded_dim {
                break Verdict::Incomplete;
            }
            let m = pa.rebase(&rows);
            pa.expand_to(m);
        }
        peak = peak.max(pa.dim);
    };
    let algebra = (verdict == Verdict::Completed).then(|| Algebra::from_fn(pa.dim, |i, j| pa.product(i, j).clone()));
    Construction {
        verdict,
        algebra,
        axes: pa.axes.clone(),
        gen_matrices: pa.gen_matrices.clone(),
        gen_elems: pa.gen_elems.clone(),
        expansions: pa.expansions,
        peak_dim: peak,
        state: pa,
    }
}

/// Continues a construction from a checkpoint of the same shape.
pub fn resume(shape: &Shape, cp: Checkpoint, budget: &Budget) -> Result<Construction, CheckpointError> {
    if cp.shape_ref != shape_ref(shape) {
        return Err(CheckpointError::ShapeMismatch);
    }
    let (_, reps) = seed(shape);
    Ok(run(cp.state, &reps, budget))
}

/// Builds the universal algebra of `shape` within `budget`.
pub fn construct(shape: &Shape, budget: &Budget) -> Construction {
    let (pa, reps) = seed(shape);
    run(pa, &reps, budget)
}
