use serde::{Deserialize, Serialize};

use crate::linalg::{combine, Echelon, Rational, SparseVec};
use crate::ns::{ns, NsLabel};

/// Where a basis vector came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    Axis(usize),
    /// Formal product of two earlier basis vectors, created in pass `pass`.
    Product {
        pass: usize,
        left: usize,
        right: usize,
    },
    /// A basis vector that survived a quotient; index before the quotient.
    Kept(usize),
}

/// A copy of a 2-generated subalgebra glued onto the dihedral sequence of a
/// pair-orbit representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsCopy {
    pub label: NsLabel,
    /// Axis points `x_0, .., x_{n-1}` playing `a_0, .., a_{n-1}`.
    pub sequence: Vec<usize>,
    /// Images of the algebra's basis once they can be computed.
    pub images: Option<Vec<SparseVec>>,
}

/// A space `V` with basis `e_0 .. e_{n-1}` and products known on the prefix
/// `W = span(e_0 .. e_{k-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialAlgebra {
    pub dim: usize,
    pub known: usize,
    /// `e_i e_j` for `i <= j < known`, row by row.
    pub table: Vec<SparseVec>,
    /// Images of the basis under each generator in `gen_elems`.
    pub gen_matrices: Vec<Vec<SparseVec>>,
    pub gen_elems: Vec<usize>,
    pub axes: Vec<SparseVec>,
    pub copies: Vec<NsCopy>,
    pub provenance: Vec<Provenance>,
    pub expansions: usize,
}

fn tri(k: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * k - i * (i + 1) / 2 + j
}

impl PartialAlgebra {
    /// The span of the axes with no products known.
    pub fn seed(n_axes: usize, gen_elems: Vec<usize>, gen_perms: &[Vec<usize>], copies: Vec<NsCopy>) -> Self {
        PartialAlgebra {
            dim: n_axes,
            known: 0,
            table: Vec::new(),
            gen_matrices: gen_perms.iter().map(|p| p.iter().map(|&j| SparseVec::unit(j)).collect()).collect(),
            gen_elems,
            axes: (0..n_axes).map(SparseVec::unit).collect(),
            copies,
            provenance: (0..n_axes).map(Provenance::Axis).collect(),
            expansions: 0,
        }
    }

    pub fn is_total(&self) -> bool {
        self.known == self.dim
    }

    pub fn in_known(&self, v: &SparseVec) -> bool {
        v.within(self.known)
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[tri(self.known, i, j)]
    }

    /// Product of two vectors of `W`.
    pub fn mul(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        debug_assert!(self.in_known(u) && self.in_known(v));
        let mut out = SparseVec::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                out.axpy(&(a * b), self.product(i, j));
            }
        }
        out
    }

    /// `u e_j` for every `j < known`.
    pub fn ad_columns(&self, u: &SparseVec) -> Vec<SparseVec> {
        (0..self.known)
            .map(|j| {
                let mut out = SparseVec::new();
                for (i, a) in u.iter() {
                    out.axpy(a, self.product(i, j));
                }
                out
            })
            .collect()
    }

    pub fn act(&self, v: &SparseVec, g: usize) -> SparseVec {
        combine(v, &self.gen_matrices[g])
    }

    /// Applies a word in the generators, left to right.
    pub fn act_word(&self, v: &SparseVec, word: &[usize]) -> SparseVec {
        word.iter().fold(v.clone(), |acc, &g| self.act(&acc, g))
    }

    /// Fills in images of subalgebra copies whose axes now lie in `W`.
    pub fn realize_copies(&mut self) {
        for c in 0..self.copies.len() {
            if self.copies[c].images.is_some() {
                continue;
            }
            let seq = self.copies[c].sequence.clone();
            if !seq.iter().all(|&p| self.in_known(&self.axes[p])) {
                continue;
            }
            let alg = ns(self.copies[c].label);
            let imgs = alg
                .basis_expressions()
                .iter()
                .map(|e| {
                    let mut v = SparseVec::new();
                    for (i, x) in &e.linear {
                        v.axpy(x, &self.axes[seq[*i]]);
                    }
                    for (i, j, x) in &e.products {
                        v.axpy(x, &self.mul(&self.axes[seq[*i]], &self.axes[seq[*j]]));
                    }
                    v
                })
                .collect();
            self.copies[c].images = Some(imgs);
        }
    }

    /// Adjoins a formal symbol for every product not yet known and makes
    /// all of the old space known.
    pub fn expand(&mut self) {
        self.expand_to(self.dim);
    }

    /// Makes the prefix of length `new_known` known by adjoining a formal
    /// symbol for each product of two of its basis vectors not yet known.
    /// The prefix must be invariant under the group.
    pub fn expand_to(&mut self, new_known: usize) {
        let (n, k, m) = (self.dim, self.known, new_known);
        if m <= k {
            return;
        }
        let mut sym = vec![usize::MAX; m * m];
        let mut next = n;
        let mut prov = Vec::new();
        for i in 0..m {
            for j in i.max(k)..m {
                sym[i * m + j] = next;
                sym[j * m + i] = next;
                prov.push(Provenance::Product { pass: self.expansions + 1, left: i, right: j });
                next += 1;
            }
        }
        let old = std::mem::take(&mut self.table);
        let mut table = Vec::with_capacity(m * (m + 1) / 2);
        for i in 0..m {
            for j in i..m {
                if j < k {
                    table.push(old[tri(k, i, j)].clone());
                } else {
                    table.push(SparseVec::unit(sym[i * m + j]));
                }
            }
        }
        self.table = table;
        self.known = m;
        self.dim = next;
        // The action on a symbol is the product of the images of its factors.
        for g in 0..self.gen_matrices.len() {
            let mut imgs = std::mem::take(&mut self.gen_matrices[g]);
            let mut extra = Vec::with_capacity(next - n);
            for p in &prov {
                if let Provenance::Product { left, right, .. } = p {
                    extra.push(self.mul(&imgs[*left], &imgs[*right]));
                }
            }
            imgs.extend(extra);
            self.gen_matrices[g] = imgs;
        }
        self.provenance.extend(prov);
        self.expansions += 1;
    }

    /// Changes basis so that `W + U` is a prefix, where `u_rows` is an
    /// echelon basis of `U` with no coordinates in `W`. Returns the new
    /// prefix length.
    pub fn rebase(&mut self, u_rows: &[SparseVec]) -> usize {
        let (n, k) = (self.dim, self.known);
        let pivots: Vec<usize> = u_rows.iter().map(|r| r.max_index().expect("nonzero row")).collect();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        // New order: W, then U, then the remaining old coordinates.
        let mut newpos = vec![usize::MAX; n];
        for (c, slot) in newpos.iter_mut().enumerate().take(k) {
            *slot = c;
        }
        let mut next = k + u_rows.len();
        for c in k..n {
            if !is_pivot[c] {
                newpos[c] = next;
                next += 1;
            }
        }
        let convert = |v: &SparseVec| {
            let mut w = v.clone();
            let mut head = Vec::new();
            for (i, &p) in pivots.iter().enumerate() {
                let c = v.get(p);
                if !c.is_zero() {
                    w.axpy(&-c.clone(), &u_rows[i]);
                    head.push((k + i, c));
                }
            }
            let mut out = w.remap(|c| Some(newpos[c]));
            out.axpy(&Rational::ONE, &SparseVec::from_pairs(head));
            out
        };
        // Old basis vector in terms of the new basis, and the new basis in
        // old coordinates.
        let new_basis: Vec<SparseVec> = {
            let mut b = vec![SparseVec::new(); n];
            for c in 0..n {
                if !is_pivot[c] {
                    b[newpos[c]] = SparseVec::unit(c);
                }
            }
            for (i, r) in u_rows.iter().enumerate() {
                b[k + i] = r.clone();
            }
            b
        };
        self.table = self.table.iter().map(&convert).collect();
        for m in &mut self.gen_matrices {
            *m = new_basis.iter().map(|b| convert(&combine(b, m))).collect();
        }
        for a in &mut self.axes {
            *a = convert(a);
        }
        for c in &mut self.copies {
            if let Some(imgs) = &mut c.images {
                for v in imgs.iter_mut() {
                    *v = convert(v);
                }
            }
        }
        let mut prov = vec![Provenance::Kept(0); n];
        for c in 0..n {
            prov[if is_pivot[c] { k + pivots.iter().position(|&p| p == c).unwrap() } else { newpos[c] }] =
                Provenance::Kept(c);
        }
        self.provenance = prov;
        k + u_rows.len()
    }

    /// Quotient by a subspace that is invariant and closed under products
    /// with `W`; see [`close_relations`](super::close_relations).
    pub fn reduce(&mut self, rel: &Echelon) {
        if rel.is_empty() {
            return;
        }
        let (n, k) = (self.dim, self.known);
        let keep: Vec<usize> = (0..n).filter(|&c| !rel.is_pivot(c)).collect();
        let mut newpos = vec![usize::MAX; n];
        for (i, &c) in keep.iter().enumerate() {
            newpos[c] = i;
        }
        let project = |v: &SparseVec| rel.reduce(v).remap(|i| Some(newpos[i]));
        let k2 = keep.iter().filter(|&&c| c < k).count();
        let mut table = Vec::with_capacity(k2 * (k2 + 1) / 2);
        for a in 0..k2 {
            for b in a..k2 {
                table.push(project(&self.table[tri(k, keep[a], keep[b])]));
            }
        }
        self.table = table;
        for m in &mut self.gen_matrices {
            *m = keep.iter().map(|&c| project(&m[c])).collect();
        }
        for a in &mut self.axes {
            *a = project(a);
        }
        for c in &mut self.copies {
            if let Some(imgs) = &mut c.images {
                for v in imgs.iter_mut() {
                    *v = project(v);
                }
            }
        }
        self.provenance = keep.iter().map(|&c| Provenance::Kept(c)).collect();
        self.dim = keep.len();
        self.known = k2;
    }
}
