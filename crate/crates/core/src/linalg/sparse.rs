//! Sparse rational vectors and an incrementally maintained echelon basis.
//!
//! The echelon basis pivots on the *last* nonzero coordinate of each row and
//! keeps every row fully reduced against every other pivot. With that choice
//! the rows whose pivot lies below some index `k` span exactly the
//! intersection of the row space with the coordinate prefix `[0, k)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::rational::Rational;

/// Sorted `(index, value)` pairs with no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<(usize, Rational)>", into = "Vec<(usize, Rational)>")]
pub struct SparseVec {
    entries: Vec<(usize, Rational)>,
}

impl From<Vec<(usize, Rational)>> for SparseVec {
    fn from(pairs: Vec<(usize, Rational)>) -> Self {
        SparseVec::from_pairs(pairs)
    }
}

impl From<SparseVec> for Vec<(usize, Rational)> {
    fn from(v: SparseVec) -> Self {
        v.entries
    }
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Rational::ONE)] }
    }

    /// Builds from arbitrary pairs; duplicates are summed and zeros dropped.
    pub fn from_pairs(mut pairs: Vec<(usize, Rational)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w += &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        SparseVec { entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect() }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Rational> {
        let mut out = vec![Rational::ZERO; n];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |p| p.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    pub fn last(&self) -> Option<(usize, &Rational)> {
        self.entries.last().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|p| p.0)
    }

    /// True when every stored coordinate is below `k`.
    pub fn within(&self, k: usize) -> bool {
        self.max_index().is_none_or(|m| m < k)
    }

    pub fn scale(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    pub fn scale_in_place(&mut self, c: &Rational) {
        if c.is_zero() {
            self.entries.clear();
        } else if !c.is_one() {
            for e in &mut self.entries {
                e.1 = &e.1 * c;
            }
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &Rational, other: &SparseVec) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while a < x.len() || b < y.len() {
            if b == y.len() || (a < x.len() && x[a].0 < y[b].0) {
                out.push(x[a].clone());
                a += 1;
            } else if a == x.len() || y[b].0 < x[a].0 {
                out.push((y[b].0, c * &y[b].1));
                b += 1;
            } else {
                let v = &x[a].1 + &(c * &y[b].1);
                if !v.is_zero() {
                    out.push((x[a].0, v));
                }
                a += 1;
                b += 1;
            }
        }
        self.entries = out;
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut r = self.clone();
        r.axpy(&Rational::ONE, other);
        r
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        let mut r = self.clone();
        r.axpy(&-Rational::ONE, other);
        r
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let (mut a, mut b) = (0, 0);
        let mut acc = Rational::ZERO;
        while a < self.entries.len() && b < other.entries.len() {
            let (i, j) = (self.entries[a].0, other.entries[b].0);
            if i < j {
                a += 1;
            } else if j < i {
                b += 1;
            } else {
                acc += &(&self.entries[a].1 * &other.entries[b].1);
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Relabels coordinates through `f`; entries mapped to `None` are dropped.
    pub fn remap(&self, f: impl Fn(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))).collect())
    }

    /// Keeps only coordinates in `[lo, hi)`, shifted down by `lo`.
    pub fn slice(&self, lo: usize, hi: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, v)| (i - lo, v.clone()))
                .collect(),
        }
    }

    pub fn shift(&self, by: usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (i + by, v.clone())).collect() }
    }

    /// Makes the last nonzero coefficient equal to one.
    pub fn normalize_last(&mut self) {
        if let Some((_, v)) = self.entries.last() {
            let inv = v.recip();
            self.scale_in_place(&inv);
        }
    }
}

/// Linear combination `sum c_i * vecs[i]` given sparse coefficients.
pub fn combine(coeffs: &SparseVec, vecs: &[SparseVec]) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, c) in coeffs.iter() {
        out.axpy(c, &vecs[i]);
    }
    out
}

/// Fully reduced echelon basis, pivoting on the last coordinate of each row.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_of: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn from_vecs<'a>(vs: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut e = Echelon::new();
        for v in vs {
            e.insert(v.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivot(&self, row: usize) -> usize {
        self.rows[row].max_index().expect("echelon rows are nonzero")
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of.contains_key(&col)
    }

    pub fn row_with_pivot(&self, col: usize) -> Option<&SparseVec> {
        self.pivot_of.get(&col).map(|&r| &self.rows[r])
    }

    /// Remainder of `v` modulo the row space; zero iff `v` lies in it.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if self.rows.is_empty() {
            return v.clone();
        }
        let hits: Vec<(usize, Rational)> =
            v.iter().filter_map(|(i, c)| self.pivot_of.get(&i).map(|&r| (r, c.clone()))).collect();
        let mut out = v.clone();
        for (r, c) in hits {
            out.axpy(&-c, &self.rows[r]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns false if it was already contained.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(&v);
        if r.is_zero() {
            return false;
        }
        r.normalize_last();
        let p = r.max_index().unwrap();
        for row in &mut self.rows {
            let c = row.get(p);
            if !c.is_zero() {
                row.axpy(&-c, &r);
            }
        }
        self.pivot_of.insert(p, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Rows lying entirely inside the coordinate prefix `[0, k)`.
    pub fn rows_within(&self, k: usize) -> impl Iterator<Item = &SparseVec> + '_ {
        self.rows.iter().filter(move |r| r.within(k))
    }

    /// Canonical form: rows sorted by pivot.
    pub fn sorted_rows(&self) -> Vec<SparseVec> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|r| r.max_index());
        rows
    }
}

/// Kernel of the linear map sending the `i`-th unit vector to `images[i]`.
///
/// Returns a basis of coefficient vectors `c` with `sum c_i images[i] = 0`.
pub fn kernel_of_images(images: &[SparseVec]) -> Vec<SparseVec> {
    let r = images.len();
    let mut ech = Echelon::new();
    for (i, img) in images.iter().enumerate() {
        // Image coordinates sit above the tag block, so they pivot first.
        let mut v = img.shift(r);
        v.axpy(&Rational::ONE, &SparseVec::unit(i));
        ech.insert(v);
    }
    ech.rows_within(r).cloned().collect()
}

/// Basis of the intersection of two subspaces of the same ambient space.
pub fn intersect(a: &[SparseVec], b: &[SparseVec]) -> Vec<SparseVec> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut images: Vec<SparseVec> = a.to_vec();
    images.extend(b.iter().map(|v| v.scale(&-Rational::ONE)));
    let ker = kernel_of_images(&images);
    let mut ech = Echelon::new();
    for c in ker {
        let left = c.slice(0, a.len());
        ech.insert(combine(&left, a));
    }
    ech.rows().to_vec()
}

/// Coordinates with respect to a fixed list of vectors.
///
/// Each input vector is shifted above a tag block recording its index, so
/// reducing a shifted query leaves minus its coordinates in the tag block.
#[derive(Clone, Debug)]
pub struct CoordinateBasis {
    len: usize,
    ech: Echelon,
}

impl CoordinateBasis {
    /// `vecs` must be linearly independent.
    pub fn new(vecs: &[SparseVec]) -> Self {
        let len = vecs.len();
        let mut ech = Echelon::new();
        for (i, v) in vecs.iter().enumerate() {
            let mut row = v.shift(len);
            row.axpy(&Rational::ONE, &SparseVec::unit(i));
            assert!(ech.insert(row), "coordinate basis vectors must be independent");
        }
        CoordinateBasis { len, ech }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let r = self.ech.reduce(&v.shift(self.len));
        if !r.within(self.len) {
            return None;
        }
        Some(r.scale(&-Rational::ONE))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::q;

    fn sv(d: &[i64]) -> SparseVec {
        SparseVec::from_dense(&d.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn axpy_cancels_to_empty() {
        let mut a = sv(&[1, 2, 0, 3]);
        a.axpy(&q(-1, 1), &sv(&[1, 2, 0, 3]));
        assert!(a.is_zero());
    }

    #[test]
    fn echelon_prefix_rows_span_intersection() {
        // span{e0 + e2, e2} meets the prefix [0, 2) in span{e0}.
        let e = Echelon::from_vecs(&[sv(&[1, 0, 1]), sv(&[0, 0, 1])]);
        let inside: Vec<_> = e.rows_within(2).cloned().collect();
        assert_eq!(inside, vec![sv(&[1, 0, 0])]);
    }

    #[test]
    fn kernel_dimension_matches_rank_deficit() {
        let imgs = vec![sv(&[1, 2]), sv(&[2, 4]), sv(&[0, 1])];
        let ker = kernel_of_images(&imgs);
        assert_eq!(ker.len(), 1);
        let back = combine(&ker[0], &imgs);
        assert!(back.is_zero());
    }

    #[test]
    fn intersection_of_planes() {
        let a = vec![sv(&[1, 0, 0]), sv(&[0, 1, 0])];
        let b = vec![sv(&[0, 1, 0]), sv(&[0, 0, 1])];
        let i = intersect(&a, &b);
        assert_eq!(i.len(), 1);
        assert_eq!(i[0], sv(&[0, 1, 0]));
    }

    #[test]
    fn coordinates_round_trip() {
        let basis = vec![sv(&[1, 1, 0]), sv(&[0, 1, 1])];
        let cb = CoordinateBasis::new(&basis);
        let w = sv(&[2, 5, 3]);
        let c = cb.coords(&w).unwrap();
        assert_eq!(c, sv(&[2, 3]));
        assert_eq!(combine(&c, &basis), w);
        assert!(cb.coords(&sv(&[1, 0, 0])).is_none());
    }
}
