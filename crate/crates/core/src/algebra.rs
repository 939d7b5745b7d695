//! Commutative algebras with a fully known multiplication table, and the
//! axis-level checks (eigenspaces, fusion, Miyamoto maps) shared by the
//! Norton–Sakuma data and completed constructions.

use serde::{Deserialize, Serialize};

use crate::fusion::{fuse, projection_poly, Eigen};
use crate::linalg::{combine, kernel_of_images, CoordinateBasis, Echelon, QMatrix, Rational, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("adjoint of the axis is not semisimple with eigenvalues in {{1, 0, 1/4, 1/32}}")]
    NotSemisimple,
    #[error("vector is not idempotent")]
    NotIdempotent,
    #[error("product of {0:?} and {1:?} eigenvectors leaves the allowed eigenspaces")]
    FusionViolated(Eigen, Eigen),
    #[error("structure constants reference index {0} outside dimension {1}")]
    OutOfRange(usize, usize),
    #[error("wrong number of products: expected {0}, got {1}")]
    WrongProductCount(usize, usize),
}

/// One named pass/fail line of a verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: String) -> Check {
        Check { name: name.to_string(), passed, detail }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Structure constants `e_i e_j` for `i <= j`, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Algebra {
    dim: usize,
    products: Vec<SparseVec>,
}

fn tri(dim: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * dim - i * (i + 1) / 2 + j
}

/// Eigenvectors of one axis, indexed like [`Eigen::ALL`].
#[derive(Clone, Debug)]
pub struct Eigenspaces {
    pub spaces: [Vec<SparseVec>; 4],
}

impl Eigenspaces {
    pub fn get(&self, e: Eigen) -> &[SparseVec] {
        &self.spaces[e.index()]
    }

    pub fn dims(&self) -> [usize; 4] {
        [0, 1, 2, 3].map(|k| self.spaces[k].len())
    }
}

impl Algebra {
    pub fn from_products(dim: usize, products: Vec<SparseVec>) -> Result<Algebra, AlgebraError> {
        let want = dim * (dim + 1) / 2;
        if products.len() != want {
            return Err(AlgebraError::WrongProductCount(want, products.len()));
        }
        for p in &products {
            if let Some(m) = p.max_index() {
                if m >= dim {
                    return Err(AlgebraError::OutOfRange(m, dim));
                }
            }
        }
        Ok(Algebra { dim, products })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> SparseVec) -> Algebra {
        let mut products = Vec::with_capacity(dim * (dim + 1) / 2);
        for i in 0..dim {
            for j in i..dim {
                products.push(f(i, j));
            }
        }
        Algebra { dim, products }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[tri(self.dim, i, j)]
    }

    /// Upper-triangular products in storage order.
    pub fn products(&self) -> &[SparseVec] {
        &self.products
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: SparseVec) {
        let k = tri(self.dim, i, j);
        self.products[k] = v;
    }

    pub fn mul(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                out.axpy(&(a * b), self.product(i, j));
            }
        }
        out
    }

    /// Images `u e_j` for every basis vector.
    pub fn ad_columns(&self, u: &SparseVec) -> Vec<SparseVec> {
        (0..self.dim)
            .map(|j| {
                let mut out = SparseVec::new();
                for (i, a) in u.iter() {
                    out.axpy(a, self.product(i, j));
                }
                out
            })
            .collect()
    }

    pub fn ad_matrix(&self, u: &SparseVec) -> QMatrix {
        let cols = self.ad_columns(u);
        let mut m = QMatrix::zeros(self.dim, self.dim);
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn eigenspaces(&self, axis: &SparseVec) -> Result<Eigenspaces, AlgebraError> {
        let cols = self.ad_columns(axis);
        let spaces = Eigen::ALL.map(|e| {
            let lam = e.value();
            let shifted: Vec<SparseVec> = cols
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    let mut c = c.clone();
                    c.axpy(&-lam.clone(), &SparseVec::unit(j));
                    c
                })
                .collect();
            let mut ker = kernel_of_images(&shifted);
            ker.sort_by_key(|v| v.max_index());
            ker
        });
        let total: usize = spaces.iter().map(|s| s.len()).sum();
        if total != self.dim {
            return Err(AlgebraError::NotSemisimple);
        }
        Ok(Eigenspaces { spaces })
    }

    /// The Miyamoto map of `axis` as images of the basis vectors: identity on
    /// the even part, negation on the 1/32-eigenspace.
    pub fn miyamoto(&self, axis: &SparseVec) -> Result<Vec<SparseVec>, AlgebraError> {
        self.eigenspaces(axis)?;
        let cols = self.ad_columns(axis);
        let poly = projection_poly(Eigen::ThirtySecond, &Eigen::ALL);
        let two = Rational::from_int(2);
        Ok((0..self.dim)
            .map(|i| {
                let proj = eval_poly(&poly, &cols, &SparseVec::unit(i));
                let mut img = SparseVec::unit(i);
                img.axpy(&-two.clone(), &proj);
                img
            })
            .collect())
    }

    /// Checks that the map `e_i -> images[i]` respects the product.
    pub fn is_automorphism(&self, images: &[SparseVec]) -> bool {
        if images.len() != self.dim {
            return false;
        }
        for i in 0..self.dim {
            for j in i..self.dim {
                let lhs = self.mul(&images[i], &images[j]);
                let rhs = combine(self.product(i, j), images);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Checks idempotence, semisimplicity and the fusion law for `axis`.
    pub fn check_axis(&self, axis: &SparseVec) -> Result<Eigenspaces, AlgebraError> {
        if self.mul(axis, axis) != *axis {
            return Err(AlgebraError::NotIdempotent);
        }
        let es = self.eigenspaces(axis)?;
        for (xi, &x) in Eigen::ALL.iter().enumerate() {
            for &y in &Eigen::ALL[xi..] {
                let allowed = Echelon::from_vecs(fuse(x, y).iter().flat_map(|z| es.get(*z)));
                for u in es.get(x) {
                    let cols = self.ad_columns(u);
                    for v in es.get(y) {
                        if !allowed.contains(&combine(v, &cols)) {
                            return Err(AlgebraError::FusionViolated(x, y));
                        }
                    }
                }
            }
        }
        Ok(es)
    }

    /// `(e_i e_j, e_k) = (e_i, e_j e_k)` for all basis triples.
    pub fn form_associates(&self, form: &QMatrix) -> bool {
        let pair = |v: &SparseVec, k: usize| -> Rational {
            let mut s = Rational::ZERO;
            for (t, c) in v.iter() {
                s += &(c * form.get(t, k));
            }
            s
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    if pair(self.product(i, j), k) != pair(self.product(j, k), i) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Basis (echelon rows) of the subalgebra generated by `gens`.
    pub fn generated_subalgebra(&self, gens: &[SparseVec]) -> Vec<SparseVec> {
        let mut ech = Echelon::new();
        let mut basis: Vec<SparseVec> = Vec::new();
        for g in gens {
            if ech.insert(g.clone()) {
                basis.push(g.clone());
            }
        }
        let mut done = 0;
        while done < basis.len() {
            let u = basis[done].clone();
            for k in 0..=done {
                let p = self.mul(&u, &basis[k]);
                if ech.insert(p.clone()) {
                    basis.push(p);
                }
            }
            done += 1;
        }
        basis
    }

    /// Structure constants of the subalgebra spanned by `basis`, in those
    /// coordinates. `None` when the span is not closed.
    pub fn restrict(&self, basis: &[SparseVec]) -> Option<Algebra> {
        let cb = CoordinateBasis::new(basis);
        let mut products = Vec::new();
        for i in 0..basis.len() {
            for j in i..basis.len() {
                products.push(cb.coords(&self.mul(&basis[i], &basis[j]))?);
            }
        }
        Some(Algebra { dim: basis.len(), products })
    }

    /// Smallest ideal containing `gens`, as echelon rows.
    pub fn ideal_closure(&self, gens: &[SparseVec]) -> Echelon {
        let mut ech = Echelon::new();
        let mut queue: Vec<SparseVec> = gens.to_vec();
        while let Some(v) = queue.pop() {
            if !ech.insert(v.clone()) {
                continue;
            }
            for j in 0..self.dim {
                let mut p = SparseVec::new();
                for (i, c) in v.iter() {
                    p.axpy(c, self.product(i, j));
                }
                if !ech.contains(&p) {
                    queue.push(p);
                }
            }
        }
        ech
    }

    /// Quotient by the ideal spanned by `ideal` (must already be an ideal).
    /// Returns the quotient and the images of the old basis vectors.
    pub fn quotient(&self, ideal: &Echelon) -> (Algebra, Vec<SparseVec>) {
        let keep: Vec<usize> = (0..self.dim).filter(|&c| !ideal.is_pivot(c)).collect();
        let mut newpos = vec![usize::MAX; self.dim];
        for (n, &c) in keep.iter().enumerate() {
            newpos[c] = n;
        }
        let project = |v: &SparseVec| {
            let r = ideal.reduce(v);
            r.remap(|i| Some(newpos[i]))
        };
        let images: Vec<SparseVec> = (0..self.dim).map(|i| project(&SparseVec::unit(i))).collect();
        let q = Algebra::from_fn(keep.len(), |i, j| project(self.product(keep[i], keep[j])));
        (q, images)
    }
}

/// `p(ad) v` where `ad` is given by its columns.
pub fn eval_poly(poly: &[Rational], cols: &[SparseVec], v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    let mut pw = v.clone();
    for (k, c) in poly.iter().enumerate() {
        if !c.is_zero() {
            out.axpy(c, &pw);
        }
        if k + 1 < poly.len() {
            pw = combine(&pw, cols);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    /// Two orthogonal idempotents.
    fn two_b() -> Algebra {
        Algebra::from_fn(2, |i, j| if i == j { SparseVec::unit(i) } else { SparseVec::new() })
    }

    #[test]
    fn product_indexing_is_symmetric() {
        let a = Algebra::from_fn(3, |i, j| SparseVec::unit(i * 3 + j).slice(0, 9));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(a.product(i, j), a.product(j, i));
            }
        }
    }

    #[test]
    fn two_b_axes_are_fine() {
        let a = two_b();
        let es = a.check_axis(&SparseVec::unit(0)).unwrap();
        assert_eq!(es.dims(), [1, 1, 0, 0]);
        let t = a.miyamoto(&SparseVec::unit(0)).unwrap();
        assert_eq!(t, vec![SparseVec::unit(0), SparseVec::unit(1)]);
    }

    #[test]
    fn doubled_idempotent_fails_fusion() {
        // e0 e1 = e1 makes e1 a 1-eigenvector of e0 while e1 e1 = e1.
        let a = Algebra::from_fn(2, |i, j| match (i, j) {
            (0, 0) => SparseVec::unit(0),
            _ => SparseVec::unit(1),
        });
        assert!(a.check_axis(&SparseVec::unit(0)).is_ok());
        let bad = Algebra::from_fn(2, |i, j| match (i, j) {
            (0, 0) => SparseVec::unit(0),
            (0, 1) => SparseVec::unit(1).scale(&q(1, 4)),
            _ => SparseVec::unit(1),
        });
        assert_eq!(
            bad.check_axis(&SparseVec::unit(0)).unwrap_err(),
            AlgebraError::FusionViolated(Eigen::Quarter, Eigen::Quarter)
        );
    }

    #[test]
    fn non_semisimple_detected() {
        // ad_{e0} has a Jordan block for eigenvalue 0.
        let a = Algebra::from_fn(3, |i, j| match (i, j) {
            (0, 0) => SparseVec::unit(0),
            (0, 2) => SparseVec::unit(1),
            _ => SparseVec::new(),
        });
        assert_eq!(a.eigenspaces(&SparseVec::unit(0)).unwrap_err(), AlgebraError::NotSemisimple);
    }

    #[test]
    fn quotient_and_restrict() {
        let a = two_b();
        let ideal = a.ideal_closure(&[SparseVec::unit(1)]);
        assert_eq!(ideal.rank(), 1);
        let (qa, imgs) = a.quotient(&ideal);
        assert_eq!(qa.dim(), 1);
        assert_eq!(imgs[1], SparseVec::new());
        let sub = a.generated_subalgebra(&[SparseVec::unit(0)]);
        assert_eq!(sub.len(), 1);
        assert_eq!(a.restrict(&sub).unwrap().dim(), 1);
        let identity: Vec<_> = (0..2).map(SparseVec::unit).collect();
        assert!(a.is_automorphism(&identity));
        assert!(a.form_associates(&QMatrix::identity(2)));
    }
}
