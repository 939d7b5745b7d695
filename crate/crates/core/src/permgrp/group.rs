use std::collections::{BTreeSet, HashMap, VecDeque};

use super::perm::Perm;
use super::GroupError;

/// Groups in the catalog are tiny, so elements are stored explicitly and
/// referred to by index.
pub type Elem = usize;

const MAX_ORDER: usize = 20_000;

/// A finite permutation group with a full multiplication table.
#[derive(Clone, Debug)]
pub struct Group {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, Elem>,
    table: Vec<u32>,
    inverses: Vec<Elem>,
    orders: Vec<usize>,
    identity: Elem,
}

/// A subgroup as a sorted list of element indices of its parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elems: Vec<Elem>,
}

impl Subgroup {
    pub fn from_sorted(elems: Vec<Elem>) -> Subgroup {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        Subgroup { elems }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.elems.binary_search(&e).is_ok()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&e| other.contains(e))
    }
}

/// The action of a group on the right cosets of a subgroup.
#[derive(Clone, Debug)]
pub struct CosetAction {
    /// Sorted element lists; coset 0 is the subgroup itself.
    pub cosets: Vec<Vec<Elem>>,
    /// Representative `r` with coset `i` equal to `H r`.
    pub reps: Vec<Elem>,
    /// `perms[g]` is the permutation of cosets induced by element `g`.
    pub perms: Vec<Perm>,
}

impl Group {
    /// Closes the given permutations under multiplication.
    pub fn generate(degree: usize, gens: &[Perm]) -> Result<Group, GroupError> {
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch);
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let p = elements[i].then(g);
                if !index.contains_key(&p) {
                    if elements.len() >= MAX_ORDER {
                        return Err(GroupError::TooLarge);
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&elements[a].then(&elements[b])] as u32;
            }
        }
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let orders = elements.iter().map(|p| p.order()).collect();
        Ok(Group { degree, elements, index, table, inverses, orders, identity: 0 })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn perm(&self, e: Elem) -> &Perm {
        &self.elements[e]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.elements.len()
    }

    pub fn find(&self, p: &Perm) -> Option<Elem> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.elements.len() + b] as Elem
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    /// `g^-1 a g`.
    #[inline]
    pub fn conj(&self, a: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), a), g)
    }

    #[inline]
    pub fn elem_order(&self, a: Elem) -> usize {
        self.orders[a]
    }

    pub fn is_involution(&self, a: Elem) -> bool {
        self.orders[a] == 2
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elems: (0..self.order()).collect() }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { elems: vec![self.identity] }
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[Elem]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    out.push(b);
                    queue.push_back(b);
                }
            }
        }
        out.sort_unstable();
        Subgroup { elems: out }
    }

    pub fn conj_class(&self, e: Elem) -> BTreeSet<Elem> {
        self.elements().map(|g| self.conj(e, g)).collect()
    }

    pub fn centralizer(&self, e: Elem) -> Subgroup {
        Subgroup { elems: self.elements().filter(|&g| self.mul(e, g) == self.mul(g, e)).collect() }
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        Subgroup { elems: self.elements().filter(|&g| self.conj_subgroup(h, g) == *h).collect() }
    }

    pub fn conj_subgroup(&self, h: &Subgroup, g: Elem) -> Subgroup {
        let mut v: Vec<Elem> = h.elems.iter().map(|&x| self.conj(x, g)).collect();
        v.sort_unstable();
        Subgroup { elems: v }
    }

    pub fn orbit(&self, point: usize) -> BTreeSet<usize> {
        self.elements().map(|g| self.elements[g].apply(point)).collect()
    }

    pub fn stabilizer(&self, point: usize) -> Subgroup {
        Subgroup { elems: self.elements().filter(|&g| self.elements[g].apply(point) == point).collect() }
    }

    /// Every subgroup `H` with `lower <= H <= upper`, found by repeatedly
    /// adjoining single elements of `upper`.
    pub fn subgroup_interval(&self, lower: &Subgroup, upper: &Subgroup) -> Result<Vec<Subgroup>, GroupError> {
        if !lower.is_subset_of(upper) {
            return Err(GroupError::NotContained);
        }
        let mut found = BTreeSet::from([lower.clone()]);
        let mut queue = VecDeque::from([lower.clone()]);
        while let Some(h) = queue.pop_front() {
            for &u in upper.elements() {
                if h.contains(u) {
                    continue;
                }
                let mut gens = h.elems.clone();
                gens.push(u);
                let k = self.closure(&gens);
                if found.insert(k.clone()) {
                    queue.push_back(k);
                }
            }
        }
        Ok(found.into_iter().collect())
    }

    pub fn coset_action(&self, h: &Subgroup) -> CosetAction {
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut cosets = Vec::new();
        let mut reps = Vec::new();
        // Visit elements in breadth-first order from the identity so that
        // coset numbering depends only on the group structure.
        for g in self.elements() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let mut c: Vec<Elem> = h.elems.iter().map(|&x| self.mul(x, g)).collect();
            c.sort_unstable();
            for &x in &c {
                coset_of[x] = cosets.len();
            }
            cosets.push(c);
            reps.push(g);
        }
        let perms = self
            .elements()
            .map(|g| {
                let imgs = reps.iter().map(|&r| coset_of[self.mul(r, g)] as u32).collect();
                Perm::from_images(imgs).expect("coset action is a permutation")
            })
            .collect();
        CosetAction { cosets, reps, perms }
    }

    /// `order(d e) <= 6` for all `d, e` in `d_set`.
    pub fn is_six_transposition(&self, d_set: &[Elem]) -> bool {
        d_set.iter().all(|&d| d_set.iter().all(|&e| self.elem_order(self.mul(d, e)) <= 6))
    }

    /// A small generating set chosen greedily from elements whose order is
    /// rare, which keeps automorphism searches cheap.
    pub fn small_generating_set(&self) -> Vec<Elem> {
        let mut count: HashMap<usize, usize> = HashMap::new();
        for e in self.elements() {
            *count.entry(self.orders[e]).or_default() += 1;
        }
        let mut cands: Vec<Elem> = self.elements().filter(|&e| e != self.identity).collect();
        cands.sort_by_key(|&e| (count[&self.orders[e]], std::cmp::Reverse(self.orders[e]), e));
        let mut best: Option<Vec<Elem>> = None;
        // Two generators suffice for most catalog groups; try those first.
        'outer: for (i, &a) in cands.iter().enumerate().take(64) {
            for &b in &cands[i + 1..] {
                if self.closure(&[a, b]).order() == self.order() {
                    best = Some(vec![a, b]);
                    break 'outer;
                }
            }
        }
        if let Some(b) = best {
            return b;
        }
        let mut gens = Vec::new();
        let mut cur = self.trivial();
        for &c in &cands {
            if cur.order() == self.order() {
                break;
            }
            if !cur.contains(c) {
                gens.push(c);
                cur = self.closure(&gens);
            }
        }
        gens
    }

    /// Tries to extend `gens -> images` to an automorphism; returns the full
    /// element map on success.
    pub fn extend_to_automorphism(&self, gens: &[Elem], images: &[Elem]) -> Option<Vec<Elem>> {
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[self.identity] = self.identity;
        used[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for (&g, &h) in gens.iter().zip(images) {
                let b = self.mul(a, g);
                let fb = self.mul(map[a], h);
                if map[b] == usize::MAX {
                    if used[fb] {
                        return None;
                    }
                    map[b] = fb;
                    used[fb] = true;
                    queue.push_back(b);
                } else if map[b] != fb {
                    return None;
                }
            }
        }
        if map.contains(&usize::MAX) {
            return None;
        }
        Some(map)
    }

    /// The full automorphism group as element maps, identity first.
    pub fn automorphisms(&self) -> Vec<Vec<Elem>> {
        let gens = self.small_generating_set();
        let cand: Vec<Vec<Elem>> =
            gens.iter().map(|&g| self.elements().filter(|&e| self.orders[e] == self.orders[g]).collect()).collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; gens.len()];
        if gens.is_empty() {
            return vec![vec![self.identity]];
        }
        loop {
            let images: Vec<Elem> = idx.iter().zip(&cand).map(|(&i, c)| c[i]).collect();
            if let Some(m) = self.extend_to_automorphism(&gens, &images) {
                out.push(m);
            }
            let mut k = 0;
            loop {
                idx[k] += 1;
                if idx[k] < cand[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
                if k == gens.len() {
                    let idpos = out.iter().position(|m| m.iter().enumerate().all(|(i, &x)| i == x));
                    if let Some(p) = idpos {
                        out.swap(0, p);
                    }
                    return out;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Group {
        let mut cyc = String::from("(");
        cyc.push_str(&(0..n).map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
        cyc.push(')');
        Group::generate(n, &[Perm::parse_cycles("(0 1)", n).unwrap(), Perm::parse_cycles(&cyc, n).unwrap()]).unwrap()
    }

    fn el(g: &Group, s: &str) -> Elem {
        g.find(&Perm::parse_cycles(s, g.degree()).unwrap()).unwrap()
    }

    #[test]
    fn s3_orbit_and_classes() {
        let g = sym(3);
        assert_eq!(g.order(), 6);
        assert_eq!(g.orbit(0).len(), 3);
        assert_eq!(g.conj_class(g.identity()).len(), 1);
    }

    #[test]
    fn s4_centralizer_of_transposition() {
        let g = sym(4);
        let c = g.centralizer(el(&g, "(0 1)"));
        // Brute force: (0 1) commutes with e, (0 1), (2 3), (0 1)(2 3).
        let brute: Vec<_> = g
            .elements()
            .filter(|&x| {
                g.perm(x).then(&Perm::parse_cycles("(0 1)", 4).unwrap())
                    == Perm::parse_cycles("(0 1)", 4).unwrap().then(g.perm(x))
            })
            .collect();
        assert_eq!(c.order(), 4);
        assert_eq!(c.elements(), brute.as_slice());
    }

    #[test]
    fn s4_interval_between_transposition_and_klein() {
        let g = sym(4);
        let lower = g.closure(&[el(&g, "(0 1)")]);
        let upper = g.closure(&[el(&g, "(0 1)"), el(&g, "(2 3)")]);
        let iv = g.subgroup_interval(&lower, &upper).unwrap();
        let orders: Vec<_> = iv.iter().map(|h| h.order()).collect();
        assert_eq!(orders.len(), 2);
        assert!(orders.contains(&2) && orders.contains(&4));
        assert!(g.subgroup_interval(&upper, &lower).is_err());
        let t = g.trivial();
        assert_eq!(g.subgroup_interval(&t, &t).unwrap(), vec![t.clone()]);
    }

    #[test]
    fn coset_action_sizes() {
        let g = sym(3);
        assert_eq!(g.coset_action(&g.whole()).perms[0].degree(), 1);
        let reg = g.coset_action(&g.trivial());
        assert_eq!(reg.cosets.len(), 6);
        // Homomorphism: action of a*b equals action of a then b.
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(reg.perms[g.mul(a, b)], reg.perms[a].then(&reg.perms[b]));
            }
        }
        let s4 = sym(4);
        let d8 = s4.closure(&[el(&s4, "(0 1)"), el(&s4, "(0 2)(1 3)")]);
        assert_eq!(d8.order(), 8);
        let klein_ext = s4.closure(&[el(&s4, "(0 1)"), el(&s4, "(2 3)")]);
        assert_eq!(s4.coset_action(&klein_ext).cosets.len(), 6);
    }

    #[test]
    fn s5_transpositions_are_six_transposition() {
        let g = sym(5);
        let d: Vec<_> = g.conj_class(el(&g, "(0 1)")).into_iter().collect();
        assert_eq!(d.len(), 10);
        assert!(g.is_six_transposition(&d));
        assert!(g.is_six_transposition(&[g.identity()]));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(sym(3).automorphisms().len(), 6);
        assert_eq!(sym(4).automorphisms().len(), 24);
        let v4 =
            Group::generate(4, &[Perm::parse_cycles("(0 1)", 4).unwrap(), Perm::parse_cycles("(2 3)", 4).unwrap()])
                .unwrap();
        assert_eq!(v4.automorphisms().len(), 6);
    }
}
