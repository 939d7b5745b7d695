use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::axet::Axet;
use crate::ns::{sub_label, NsLabel};
use crate::permgrp::Elem;

/// A G-orbit of unordered pairs of distinct axes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOrbit {
    /// Least pair of the orbit.
    pub rep: (usize, usize),
    /// Dihedral sequence of the representative, `rep.0, rep.1, ...`.
    pub sequence: Vec<usize>,
    pub size: usize,
}

impl PairOrbit {
    pub fn period(&self) -> usize {
        self.sequence.len()
    }
}

fn key(p: usize, q: usize) -> (usize, usize) {
    if p < q {
        (p, q)
    } else {
        (q, p)
    }
}

/// Pair orbits ordered by representative, with a lookup from every pair to
/// its orbit index. Panics on an invalid dihedral sequence, which validated
/// axets never have.
pub fn pair_orbits(ax: &Axet) -> (Vec<PairOrbit>, HashMap<(usize, usize), usize>) {
    let n = ax.len();
    let gens: Vec<Elem> = ax.group.gens.to_vec();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut orbits = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            if index.contains_key(&(p, q)) {
                continue;
            }
            let id = orbits.len();
            let mut stack = vec![(p, q)];
            index.insert((p, q), id);
            let mut size = 0;
            while let Some((a, b)) = stack.pop() {
                size += 1;
                for &g in &gens {
                    let k = key(ax.apply(a, g), ax.apply(b, g));
                    if let std::collections::hash_map::Entry::Vacant(e) = index.entry(k) {
                        e.insert(id);
                        stack.push(k);
                    }
                }
            }
            let sequence = ax.dihedral_sequence(p, q).expect("validated axet");
            orbits.push(PairOrbit { rep: (p, q), sequence, size });
        }
    }
    (orbits, index)
}

/// An assignment of labels to pair orbits.
#[derive(Clone, Debug)]
pub struct Shape {
    pub axet: Arc<Axet>,
    pub orbits: Arc<Vec<PairOrbit>>,
    pub implications: Arc<Implications>,
    pub labels: Vec<NsLabel>,
}

impl Shape {
    /// Labels in descending numeral order, runs written as `(2A)^k`.
    pub fn name(&self) -> String {
        shape_name(&self.orbits, &self.labels)
    }

    /// One label per connected component of the shape graph: the label of
    /// the component's orbit of largest period.
    pub fn component_name(&self) -> String {
        component_name(&self.orbits, &self.implications, &self.labels)
    }

    pub fn label_of(&self, p: usize, q: usize, index: &HashMap<(usize, usize), usize>) -> NsLabel {
        self.labels[index[&key(p, q)]]
    }

    pub fn to_record(&self) -> ShapeRecord {
        let grp = &self.axet.group.group;
        let tau = &self.axet.tau;
        ShapeRecord {
            group: self.axet.group.name.clone(),
            axes_pattern: self.axet.pattern(),
            tau_map: self.axet.tau.iter().map(|&t| self.axet.group.group.perm(t).to_string()).collect(),
            pair_orbits: self
                .orbits
                .iter()
                .zip(&self.labels)
                .map(|(o, l)| PairOrbitRecord {
                    reps: [o.rep.0, o.rep.1],
                    rho_order: grp.elem_order(grp.mul(tau[o.rep.0], tau[o.rep.1])),
                    period: o.period(),
                    label: *l,
                })
                .collect(),
        }
    }
}

pub fn shape_name(orbits: &[PairOrbit], labels: &[NsLabel]) -> String {
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(orbits[i].period()), i));
    let seq: Vec<NsLabel> = order.iter().map(|&i| labels[i]).collect();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < seq.len() {
        let mut j = i;
        while j < seq.len() && seq[j] == seq[i] {
            j += 1;
        }
        parts.push(if j - i == 1 { seq[i].to_string() } else { format!("({})^{}", seq[i], j - i) });
        i = j;
    }
    parts.join(" ")
}

pub fn component_name(orbits: &[PairOrbit], imp: &Implications, labels: &[NsLabel]) -> String {
    let n = orbits.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (o, &l) in labels.iter().enumerate() {
        for &(o2, _) in &imp[&(o, l)] {
            let (a, b) = (find(&mut parent, o), find(&mut parent, o2));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut tops: Vec<Option<usize>> = vec![None; n];
    for o in 0..n {
        let r = find(&mut parent, o);
        if tops[r].is_none_or(|t| orbits[o].period() > orbits[t].period()) {
            tops[r] = Some(o);
        }
    }
    let keep: Vec<usize> = tops.into_iter().flatten().collect();
    let sub: Vec<PairOrbit> = keep.iter().map(|&o| orbits[o].clone()).collect();
    let sub_labels: Vec<NsLabel> = keep.iter().map(|&o| labels[o]).collect();
    shape_name(&sub, &sub_labels)
}

/// Serialized form of a shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeRecord {
    pub group: String,
    pub axes_pattern: String,
    pub tau_map: Vec<String>,
    pub pair_orbits: Vec<PairOrbitRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOrbitRecord {
    pub reps: [usize; 2],
    /// Order of `tau(p) tau(q)`.
    pub rho_order: usize,
    /// Length of the dihedral sequence; differs from `rho_order` when the
    /// two axes share an involution or either involution is trivial.
    pub period: usize,
    pub label: NsLabel,
}

/// `(orbit, label) -> [(orbit', label')]`: assigning the first forces the
/// second because the pair lies in the corresponding subalgebra.
pub type Implications = BTreeMap<(usize, NsLabel), Vec<(usize, NsLabel)>>;

pub fn shape_graph(orbits: &[PairOrbit], index: &HashMap<(usize, usize), usize>) -> Implications {
    let mut imp = Implications::new();
    for (o, po) in orbits.iter().enumerate() {
        let n = po.period();
        for &l in NsLabel::for_period(n) {
            let mut forced = BTreeSet::new();
            for i in 0..n {
                for j in i + 1..n {
                    let other = index[&key(po.sequence[i], po.sequence[j])];
                    forced.insert((other, sub_label(l, i, j)));
                }
            }
            imp.insert((o, l), forced.into_iter().collect());
        }
    }
    imp
}

/// Every consistent labelling, before symmetry reduction.
pub fn all_assignments(orbits: &[PairOrbit], imp: &Implications) -> Vec<Vec<NsLabel>> {
    fn assign(o: usize, l: NsLabel, cur: &mut [Option<NsLabel>], orbits: &[PairOrbit], imp: &Implications) -> bool {
        let mut queue = vec![(o, l)];
        while let Some((o, l)) = queue.pop() {
            if !NsLabel::for_period(orbits[o].period()).contains(&l) {
                return false;
            }
            match cur[o] {
                Some(x) if x == l => continue,
                Some(_) => return false,
                None => cur[o] = Some(l),
            }
            for &(o2, l2) in &imp[&(o, l)] {
                match cur[o2] {
                    Some(x) if x != l2 => return false,
                    Some(_) => {}
                    None => queue.push((o2, l2)),
                }
            }
        }
        true
    }
    fn rec(
        i: usize,
        cur: &mut Vec<Option<NsLabel>>,
        orbits: &[PairOrbit],
        imp: &Implications,
        out: &mut Vec<Vec<NsLabel>>,
    ) {
        if i == orbits.len() {
            out.push(cur.iter().map(|l| l.expect("assigned")).collect());
            return;
        }
        if cur[i].is_some() {
            rec(i + 1, cur, orbits, imp, out);
            return;
        }
        for &l in NsLabel::for_period(orbits[i].period()) {
            let mut next = cur.clone();
            if assign(i, l, &mut next, orbits, imp) {
                rec(i + 1, &mut next, orbits, imp, out);
            }
        }
    }
    let mut out = Vec::new();
    rec(0, &mut vec![None; orbits.len()], orbits, imp, &mut out);
    out
}
