use std::collections::BTreeSet;
use std::sync::Arc;

use super::axet::{axet_key, Axet, OrbitSpec};
use crate::permgrp::{Elem, MarkedGroup, Subgroup};

/// Possible stabilizers of the axis whose involution is generator `k`.
///
/// Subgroups between `<t>` and `C_G(t)` survive when they contain the
/// squares `(t s)^2` for every `s` in D with `t s` of order 4, and are the
/// whole centralizer when some `t s` has order 5. The identity involution
/// forces the stabilizer to be G, and conversely.
pub fn candidate_stabilizers(g: &MarkedGroup, k: usize) -> Vec<Subgroup> {
    let grp = &g.group;
    let t = g.gens[k];
    if t == grp.identity() {
        return vec![grp.whole()];
    }
    let lower = grp.closure(&[t]);
    let upper = grp.centralizer(t);
    let mut forced: Vec<Elem> = Vec::new();
    let mut has_five = false;
    for &s in &g.d_set {
        let p = grp.mul(t, s);
        match grp.elem_order(p) {
            4 => forced.push(grp.mul(p, p)),
            5 => has_five = true,
            _ => {}
        }
    }
    if has_five {
        return vec![upper];
    }
    grp.subgroup_interval(&lower, &upper)
        .expect("<t> lies in its centralizer")
        .into_iter()
        .filter(|h| h.order() < grp.order())
        .filter(|h| forced.iter().all(|&f| h.contains(f)))
        .collect()
}

fn jointly_conjugate(g: &MarkedGroup, a: &OrbitSpec, b: &OrbitSpec) -> bool {
    let grp = &g.group;
    a.stabilizer.order() == b.stabilizer.order()
        && grp.elements().any(|x| grp.conj(a.tau, x) == b.tau && grp.conj_subgroup(&a.stabilizer, x) == b.stabilizer)
}

/// The five set partitions of the three generator slots.
const PARTITIONS: [&[&[usize]]; 5] =
    [&[&[0], &[1], &[2]], &[&[0, 1], &[2]], &[&[0, 2], &[1]], &[&[0], &[1, 2]], &[&[0, 1, 2]]];

/// Why a candidate axet was rejected; used by tests and diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    NotFaithful,
    TwoGenerated,
    BadPairPeriod,
    UniqueAxisViolated,
    StrongAxisViolated,
    SquareNotInStabilizer,
}

/// Post-hoc checks of the axet-level lemmas.
pub fn validate(ax: &Axet) -> Result<(), Rejection> {
    let grp = &ax.group.group;
    if !ax.is_faithful() {
        return Err(Rejection::NotFaithful);
    }
    let n = ax.len();
    let stabs: Vec<Subgroup> = (0..n).map(|p| ax.stabilizer(p)).collect();
    let unique: Vec<bool> = (0..n).map(|p| ax.tau.iter().filter(|&&t| t == ax.tau[p]).count() == 1).collect();
    for d in 0..n {
        for e in 0..n {
            if d == e {
                continue;
            }
            let rho = grp.mul(ax.tau[d], ax.tau[e]);
            match grp.elem_order(rho) {
                5 if !unique[d] => return Err(Rejection::UniqueAxisViolated),
                4 if !stabs[d].contains(grp.mul(rho, rho)) => return Err(Rejection::SquareNotInStabilizer),
                2 if unique[e] && !stabs[d].contains(ax.tau[e]) => return Err(Rejection::StrongAxisViolated),
                _ => {}
            }
            if d < e {
                match ax.dihedral_sequence(d, e) {
                    Some(s) if (2..=6).contains(&s.len()) => {}
                    _ => return Err(Rejection::BadPairPeriod),
                }
            }
        }
    }
    if ax.is_two_generated() {
        return Err(Rejection::TwoGenerated);
    }
    Ok(())
}

/// All axets for `g` up to isomorphism, including those that admit no
/// shape. Ordered by orbit pattern, then key.
pub fn enumerate_axet_candidates(g: &Arc<MarkedGroup>) -> Vec<Axet> {
    let grp = &g.group;
    let auts = grp.automorphisms();
    let cands: Vec<Vec<Subgroup>> = (0..3).map(|k| candidate_stabilizers(g, k)).collect();
    let mut seen: BTreeSet<Vec<(Vec<Elem>, Elem)>> = BTreeSet::new();
    let mut out = Vec::new();
    for h0 in &cands[0] {
        for h1 in &cands[1] {
            for h2 in &cands[2] {
                let specs = [h0, h1, h2]
                    .iter()
                    .enumerate()
                    .map(|(k, h)| OrbitSpec { stabilizer: (*h).clone(), tau: g.gens[k] })
                    .collect::<Vec<_>>();
                for part in PARTITIONS {
                    let ok = part
                        .iter()
                        .all(|block| block.iter().all(|&k| jointly_conjugate(g, &specs[block[0]], &specs[k])));
                    if !ok {
                        continue;
                    }
                    let chosen: Vec<OrbitSpec> = part.iter().map(|b| specs[b[0]].clone()).collect();
                    let key = axet_key(g, &chosen, &auts);
                    if !seen.insert(key.clone()) {
                        continue;
                    }
                    let mut ax = Axet::from_specs(g.clone(), chosen);
                    ax.key = key;
                    if validate(&ax).is_ok() {
                        out.push(ax);
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| (a.orbit_sizes().len(), a.pattern(), &a.key).cmp(&(b.orbit_sizes().len(), b.pattern(), &b.key)));
    out
}
