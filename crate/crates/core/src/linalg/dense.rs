//! Dense rational matrices and the textbook kernels over them.

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use super::sparse::SparseVec;
use super::LinalgError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect())
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = QMatrix::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> SparseVec {
        SparseVec::from_dense(self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch);
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub reduced: QMatrix,
    pub pivot_cols: Vec<usize>,
}

/// Reduced row echelon form with leftmost pivots.
pub fn rref(m: &QMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a.get(r, c).recip();
        for j in c..a.cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c).clone();
            if f.is_zero() {
                continue;
            }
            for j in c..a.cols {
                let v = a.get(i, j) - &(&f * a.get(r, j));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { rank: r, reduced: a, pivot_cols: pivots }
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).rank
}

/// A subspace of `Q^ambient_dim` stored by its canonical reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::span(ambient_dim, QMatrix::identity(ambient_dim).to_rows())
    }

    /// Span of arbitrary vectors, canonicalized.
    pub fn span(ambient_dim: usize, vecs: Vec<Vec<Rational>>) -> Self {
        if vecs.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        let r = rref(&QMatrix::from_rows(vecs));
        let basis = (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect();
        Subspace { ambient_dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&QMatrix::from_rows(rows)) == self.dim()
    }
}

/// Right null space of `m`.
pub fn kernel(m: &QMatrix) -> Subspace {
    let r = rref(m);
    let n = m.ncols();
    let free: Vec<usize> = (0..n).filter(|c| !r.pivot_cols.contains(c)).collect();
    let vecs = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::ZERO; n];
            v[f] = Rational::ONE;
            for (i, &p) in r.pivot_cols.iter().enumerate() {
                v[p] = -r.reduced.get(i, f);
            }
            v
        })
        .collect();
    Subspace::span(n, vecs)
}

/// Full solution set of `coeffs * x = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Option<Vec<Rational>>,
    pub homogeneous: Subspace,
}

pub fn solve_linear_system(coeffs: &QMatrix, rhs: &[Rational]) -> Result<Solution, LinalgError> {
    if rhs.len() != coeffs.nrows() {
        return Err(LinalgError::DimensionMismatch);
    }
    let n = coeffs.ncols();
    let aug = QMatrix::from_rows(
        (0..coeffs.nrows())
            .map(|i| {
                let mut r = coeffs.row(i).to_vec();
                r.push(rhs[i].clone());
                r
            })
            .collect(),
    );
    let r = rref(&aug);
    let homogeneous = kernel(coeffs);
    if r.pivot_cols.contains(&n) {
        return Ok(Solution { particular: None, homogeneous });
    }
    let mut x = vec![Rational::ZERO; n];
    for (i, &p) in r.pivot_cols.iter().enumerate() {
        x[p] = r.reduced.get(i, n).clone();
    }
    Ok(Solution { particular: Some(x), homogeneous })
}

/// Inertia of a symmetric matrix: counts of positive, zero and negative
/// entries in any diagonal matrix congruent to it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub pos: usize,
    pub zero: usize,
    pub neg: usize,
}

impl Signature {
    pub fn is_positive_definite(&self) -> bool {
        self.zero == 0 && self.neg == 0
    }

    pub fn is_positive_semidefinite(&self) -> bool {
        self.neg == 0
    }
}

/// Symmetric Gaussian elimination. When every remaining diagonal entry is
/// zero but an off-diagonal entry `b` is not, the hyperbolic block
/// `[[0, b], [b, 0]]` is split off whole (one positive, one negative).
pub fn sym_signature(m: &QMatrix) -> Result<Signature, LinalgError> {
    if !m.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let n = m.nrows();
    let mut a = m.clone();
    let mut alive: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    loop {
        if let Some(&i) = alive.iter().find(|&&i| !a.get(i, i).is_zero()) {
            let d = a.get(i, i).clone();
            if d.signum() > 0 {
                pos += 1;
            } else {
                neg += 1;
            }
            alive.retain(|&x| x != i);
            let dinv = d.recip();
            for &j in &alive {
                let f = a.get(j, i) * &dinv;
                if f.is_zero() {
                    continue;
                }
                for &k in &alive {
                    let v = a.get(j, k) - &(&f * a.get(i, k));
                    a.set(j, k, v);
                }
            }
            continue;
        }
        let off = alive
            .iter()
            .flat_map(|&i| alive.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| i < j && !a.get(i, j).is_zero());
        let Some((i, j)) = off else { break };
        pos += 1;
        neg += 1;
        // Schur complement of the block [[0, b], [b, 0]] whose inverse is
        // [[0, 1/b], [1/b, 0]].
        let binv = a.get(i, j).recip();
        alive.retain(|&x| x != i && x != j);
        let snapshot = a.clone();
        for &r in &alive {
            for &c in &alive {
                let corr = &(snapshot.get(r, i) * snapshot.get(j, c) + snapshot.get(r, j) * snapshot.get(i, c)) * &binv;
                let v = snapshot.get(r, c) - &corr;
                a.set(r, c, v);
            }
        }
    }
    Ok(Signature { pos, zero: n - pos - neg, neg })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::q;

    #[test]
    fn rref_identity_and_dependent_rows() {
        let id = QMatrix::identity(2);
        let r = rref(&id);
        assert_eq!(r.rank, 2);
        assert_eq!(r.reduced, id);

        let m = QMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        let r = rref(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, QMatrix::from_ints(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivot_cols, vec![0]);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert_eq!(kernel(&QMatrix::identity(3)).dim(), 0);
        assert_eq!(kernel(&QMatrix::zeros(3, 3)).dim(), 3);
    }

    #[test]
    fn solve_trivial_systems() {
        let s = solve_linear_system(&QMatrix::from_ints(&[&[1]]), &[q(1, 1)]).unwrap();
        assert_eq!(s.particular, Some(vec![q(1, 1)]));
        assert_eq!(s.homogeneous.dim(), 0);
        let s = solve_linear_system(&QMatrix::from_ints(&[&[0]]), &[q(1, 1)]).unwrap();
        assert_eq!(s.particular, None);
        assert!(solve_linear_system(&QMatrix::from_ints(&[&[1]]), &[]).is_err());
    }

    #[test]
    fn signature_basic_cases() {
        let s = sym_signature(&QMatrix::identity(3)).unwrap();
        assert_eq!(s, Signature { pos: 3, zero: 0, neg: 0 });
        let s = sym_signature(&QMatrix::diagonal(&[q(1, 1), q(0, 1), q(-1, 1)])).unwrap();
        assert_eq!(s, Signature { pos: 1, zero: 1, neg: 1 });
    }

    #[test]
    fn signature_needs_hyperbolic_block() {
        let m = QMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert_eq!(sym_signature(&m).unwrap(), Signature { pos: 1, zero: 1, neg: 1 });
        let m = QMatrix::from_ints(&[&[0, 2, 1], &[2, 0, 3], &[1, 3, 0]]);
        let s = sym_signature(&m).unwrap();
        assert_eq!(s.pos + s.neg + s.zero, 3);
        // det = 12 > 0 with zero trace: one positive, two negative.
        assert_eq!(s, Signature { pos: 1, zero: 0, neg: 2 });
    }

    #[test]
    fn signature_rejects_asymmetric() {
        let m = QMatrix::from_ints(&[&[1, 2], &[0, 1]]);
        assert!(matches!(sym_signature(&m), Err(LinalgError::NotSymmetric)));
    }
}
