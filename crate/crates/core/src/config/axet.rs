use std::collections::BTreeSet;
use std::ops::Range;
use std::sync::Arc;

use crate::permgrp::{Elem, MarkedGroup, Perm, Subgroup};

/// One G-orbit of axes, given by the stabilizer of a base point and its
/// involution (or the identity).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitSpec {
    pub stabilizer: Subgroup,
    pub tau: Elem,
}

/// A G-set of putative axes with an equivariant map to `D u {1}`.
#[derive(Clone, Debug)]
pub struct Axet {
    pub group: Arc<MarkedGroup>,
    pub specs: Vec<OrbitSpec>,
    /// Point ranges of the orbits, in the order of `specs`.
    pub orbits: Vec<Range<usize>>,
    /// `action[g]` permutes the points.
    pub action: Vec<Perm>,
    pub tau: Vec<Elem>,
    /// Points whose involutions are the three marked generators.
    pub gen_axes: [usize; 3],
    /// Canonical invariant under automorphisms of G; equal keys mean
    /// isomorphic axets.
    pub key: Vec<(Vec<Elem>, Elem)>,
}

impl Axet {
    /// Builds the disjoint union of the coset spaces of the given specs.
    pub fn from_specs(group: Arc<MarkedGroup>, specs: Vec<OrbitSpec>) -> Axet {
        let g = &group.group;
        let mut orbits = Vec::new();
        let mut tau = Vec::new();
        let mut images: Vec<Vec<u32>> = vec![Vec::new(); g.order()];
        let mut start = 0;
        for s in &specs {
            let act = g.coset_action(&s.stabilizer);
            let size = act.cosets.len();
            for &r in &act.reps {
                tau.push(g.conj(s.tau, r));
            }
            for (e, p) in act.perms.iter().enumerate() {
                images[e].extend(p.images().iter().map(|&i| i + start as u32));
            }
            orbits.push(start..start + size);
            start += size;
        }
        let action = images.into_iter().map(|v| Perm::from_images(v).expect("union of actions")).collect();
        let mut ax = Axet { group, specs, orbits, action, tau, gen_axes: [0; 3], key: Vec::new() };
        ax.gen_axes = [0, 1, 2].map(|k| ax.find_generator_axis(k));
        ax
    }

    fn find_generator_axis(&self, k: usize) -> usize {
        let t = self.group.gens[k];
        (0..self.len()).find(|&p| self.tau[p] == t).unwrap_or(usize::MAX)
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    #[inline]
    pub fn apply(&self, p: usize, g: Elem) -> usize {
        self.action[g].apply(p)
    }

    pub fn orbit_of(&self, p: usize) -> usize {
        self.orbits.iter().position(|r| r.contains(&p)).expect("point in range")
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|r| r.len()).collect()
    }

    /// Orbit sizes in ascending order joined by `+`, e.g. `"3+6+6"`.
    pub fn pattern(&self) -> String {
        let mut s = self.orbit_sizes();
        s.sort_unstable();
        s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("+")
    }

    pub fn stabilizer(&self, p: usize) -> Subgroup {
        let g = &self.group.group;
        Subgroup::from_sorted(g.elements().filter(|&e| self.apply(p, e) == p).collect())
    }

    /// Whether some element besides the identity fixes every point.
    pub fn is_faithful(&self) -> bool {
        self.group.group.elements().skip(1).all(|e| !self.action[e].is_identity())
    }

    /// Smallest set containing `start` closed under the Miyamoto group of
    /// its own members.
    pub fn closure(&self, start: &[usize]) -> BTreeSet<usize> {
        let g = &self.group.group;
        let mut set: BTreeSet<usize> = start.iter().copied().collect();
        loop {
            let taus: Vec<Elem> = set.iter().map(|&p| self.tau[p]).collect();
            let k = g.closure(&taus);
            let next: BTreeSet<usize> = set
                .iter()
                .flat_map(|&p| k.elements().iter().map(move |&h| (p, h)))
                .map(|(p, h)| self.apply(p, h))
                .collect();
            if next.len() == set.len() {
                return set;
            }
            set = next;
        }
    }

    /// True when two axes already generate all of X.
    pub fn is_two_generated(&self) -> bool {
        let n = self.len();
        (0..n).any(|d| (d..n).any(|e| self.closure(&[d, e]).len() == n))
    }

    /// The dihedral sequence `d, e, d^r, e^r, ...` with `r = tau_d tau_e`,
    /// cut to its period. `None` if the sequence repeats before closing up.
    pub fn dihedral_sequence(&self, d: usize, e: usize) -> Option<Vec<usize>> {
        let g = &self.group.group;
        let rho = g.mul(self.tau[d], self.tau[e]);
        let m = g.elem_order(rho);
        let mut seq = Vec::with_capacity(2 * m);
        let mut r = g.identity();
        for _ in 0..m {
            seq.push(self.apply(d, r));
            seq.push(self.apply(e, r));
            r = g.mul(r, rho);
        }
        let len = seq.len();
        let n = (1..=len).find(|&n| len % n == 0 && (0..len).all(|i| seq[i] == seq[(i + n) % len]))?;
        seq.truncate(n);
        let distinct: BTreeSet<usize> = seq.iter().copied().collect();
        (distinct.len() == n).then_some(seq)
    }
}

/// Canonical representative of the class of `(h, t)` under conjugation.
pub fn conj_canonical(group: &MarkedGroup, spec: &OrbitSpec) -> (Vec<Elem>, Elem) {
    let g = &group.group;
    g.elements()
        .map(|x| (g.conj_subgroup(&spec.stabilizer, x).elements().to_vec(), g.conj(spec.tau, x)))
        .min()
        .expect("group is nonempty")
}

/// Canonical key of a multiset of orbit specs, minimized over `auts`.
pub fn axet_key(group: &MarkedGroup, specs: &[OrbitSpec], auts: &[Vec<Elem>]) -> Vec<(Vec<Elem>, Elem)> {
    auts.iter()
        .map(|phi| {
            let mut k: Vec<(Vec<Elem>, Elem)> = specs
                .iter()
                .map(|s| {
                    let mut h: Vec<Elem> = s.stabilizer.elements().iter().map(|&x| phi[x]).collect();
                    h.sort_unstable();
                    conj_canonical(group, &OrbitSpec { stabilizer: Subgroup::from_sorted(h), tau: phi[s.tau] })
                })
                .collect();
            k.sort();
            k
        })
        .min()
        .expect("identity automorphism present")
}
