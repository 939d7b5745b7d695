//! Axis configurations (axets), their pair orbits, and shapes up to symmetry.

mod axet;
mod enumerate;
mod shape;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

pub use axet::{axet_key, conj_canonical, Axet, OrbitSpec};
pub use enumerate::{candidate_stabilizers, enumerate_axet_candidates, validate, Rejection};
pub use shape::{
    all_assignments, component_name, pair_orbits, shape_graph, shape_name, Implications, PairOrbit, PairOrbitRecord,
    Shape, ShapeRecord,
};

use crate::ns::NsLabel;
use crate::permgrp::{catalog, Elem, GroupError, MarkedGroup};

/// Permutations of the pair orbits induced by automorphisms of the axet:
/// pairs `(phi, f)` with `phi` in Aut(G) and `f` a bijection of the axes
/// satisfying `f(x^g) = f(x)^phi(g)` and `tau(f x) = phi(tau x)`.
pub fn pair_orbit_symmetries(
    ax: &Axet,
    orbits: &[PairOrbit],
    index: &HashMap<(usize, usize), usize>,
) -> Vec<Vec<usize>> {
    let grp = &ax.group.group;
    let n = ax.len();
    let stabs: Vec<_> = (0..n).map(|p| ax.stabilizer(p)).collect();
    // transversal[p] maps the base point of p's orbit to p.
    let mut transversal = vec![usize::MAX; n];
    for r in &ax.orbits {
        for g in grp.elements() {
            let p = ax.apply(r.start, g);
            if transversal[p] == usize::MAX {
                transversal[p] = g;
            }
        }
    }
    let mut perms: BTreeSet<Vec<usize>> = BTreeSet::new();
    for phi in grp.automorphisms() {
        let cands: Vec<Vec<usize>> = ax
            .orbits
            .iter()
            .map(|r| {
                let base = r.start;
                let mut h: Vec<Elem> = stabs[base].elements().iter().map(|&x| phi[x]).collect();
                h.sort_unstable();
                (0..n).filter(|&y| ax.tau[y] == phi[ax.tau[base]] && stabs[y].elements() == h.as_slice()).collect()
            })
            .collect();
        let k = ax.orbits.len();
        let mut choice = vec![0usize; k];
        'outer: loop {
            let imgs: Vec<usize> = (0..k).map(|o| cands[o].get(choice[o]).copied().unwrap_or(usize::MAX)).collect();
            if imgs.iter().all(|&y| y != usize::MAX) {
                let targets: BTreeSet<usize> = imgs.iter().map(|&y| ax.orbit_of(y)).collect();
                if targets.len() == k {
                    let f: Vec<usize> = (0..n)
                        .map(|p| {
                            let o = ax.orbit_of(p);
                            ax.apply(imgs[o], phi[transversal[p]])
                        })
                        .collect();
                    let perm = orbits
                        .iter()
                        .map(|po| {
                            let (a, b) = (f[po.rep.0], f[po.rep.1]);
                            index[&if a < b { (a, b) } else { (b, a) }]
                        })
                        .collect();
                    perms.insert(perm);
                }
            }
            for o in 0..k {
                choice[o] += 1;
                if choice[o] < cands[o].len().max(1) {
                    continue 'outer;
                }
                choice[o] = 0;
            }
            break;
        }
    }
    perms.into_iter().collect()
}

/// An axet with its pair orbits and its shapes up to symmetry.
#[derive(Clone, Debug)]
pub struct AxetShapes {
    pub axet: Arc<Axet>,
    pub orbits: Arc<Vec<PairOrbit>>,
    pub index: Arc<HashMap<(usize, usize), usize>>,
    pub implications: Arc<Implications>,
    pub shapes: Vec<Shape>,
    /// Distinguishes axets of one group sharing an orbit pattern: `""`,
    /// then `"#2"`, `"#3"`.
    pub suffix: String,
}

impl AxetShapes {
    pub fn pattern_id(&self) -> String {
        format!("{}{}", self.axet.pattern(), self.suffix)
    }
}

/// Shapes of `ax` up to axet automorphisms, in canonical order.
pub fn enumerate_shapes(ax: Arc<Axet>) -> AxetShapes {
    let (orbits, index) = pair_orbits(&ax);
    let imp = shape_graph(&orbits, &index);
    let syms = pair_orbit_symmetries(&ax, &orbits, &index);
    let mut canon: BTreeSet<Vec<NsLabel>> = BTreeSet::new();
    for a in all_assignments(&orbits, &imp) {
        let best = syms
            .iter()
            .map(|perm| {
                // Orbit i goes to perm[i]; permuted[perm[i]] = a[i].
                let mut out = a.clone();
                for (i, &j) in perm.iter().enumerate() {
                    out[j] = a[i];
                }
                out
            })
            .min()
            .unwrap_or(a);
        canon.insert(best);
    }
    let orbits = Arc::new(orbits);
    let imp = Arc::new(imp);
    let shapes = canon
        .into_iter()
        .map(|labels| Shape { axet: ax.clone(), orbits: orbits.clone(), implications: imp.clone(), labels })
        .collect();
    AxetShapes { axet: ax, orbits, index: Arc::new(index), implications: imp, shapes, suffix: String::new() }
}

/// Axets admitting at least one shape, each with its shapes. Axets sharing
/// an orbit pattern are ordered by shape count.
pub fn enumerate_axets(g: &Arc<MarkedGroup>) -> Vec<AxetShapes> {
    let mut out: Vec<AxetShapes> = enumerate_axet_candidates(g)
        .into_iter()
        .map(|a| enumerate_shapes(Arc::new(a)))
        .filter(|s| !s.shapes.is_empty())
        .collect();
    out.sort_by(|a, b| {
        (a.axet.orbits.len(), sorted_sizes(&a.axet), a.shapes.len(), &a.axet.key).cmp(&(
            b.axet.orbits.len(),
            sorted_sizes(&b.axet),
            b.shapes.len(),
            &b.axet.key,
        ))
    });
    for i in 1..out.len() {
        if out[i].axet.pattern() == out[i - 1].axet.pattern() {
            let prev = out[i - 1].suffix.trim_start_matches('#').parse::<usize>().unwrap_or(1);
            out[i].suffix = format!("#{}", prev + 1);
        }
    }
    out
}

/// Axets of every catalog family, optionally restricted to one group name.
/// Pattern suffixes are assigned per group across its families, in catalog
/// order.
pub fn catalog_axets(group: Option<&str>) -> Result<Vec<(Arc<MarkedGroup>, AxetShapes)>, GroupError> {
    let fams: Vec<_> = catalog()?.into_iter().filter(|(g, _)| group.is_none_or(|n| g.name == n)).collect();
    if let (Some(n), true) = (group, fams.is_empty()) {
        return Err(GroupError::UnknownGroup(n.to_string()));
    }
    let mut seen: HashMap<(String, String), usize> = HashMap::new();
    let mut out = Vec::new();
    for (g, _) in fams {
        let g = Arc::new(g);
        for mut a in enumerate_axets(&g) {
            let n = seen.entry((g.name.clone(), a.axet.pattern())).or_insert(0);
            *n += 1;
            a.suffix = if *n == 1 { String::new() } else { format!("#{n}") };
            out.push((g.clone(), a));
        }
    }
    Ok(out)
}

fn sorted_sizes(ax: &Axet) -> Vec<usize> {
    let mut s = ax.orbit_sizes();
    s.sort_unstable();
    s
}
