//! The eight 2-generated algebras of Monster type, shipped as data and
//! checked on load.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, AlgebraError, Check, CheckReport};
use crate::linalg::{CoordinateBasis, Echelon, QMatrix, Rational, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NsLabel {
    #[serde(rename = "2A")]
    TwoA,
    #[serde(rename = "2B")]
    TwoB,
    #[serde(rename = "3A")]
    ThreeA,
    #[serde(rename = "3C")]
    ThreeC,
    #[serde(rename = "4A")]
    FourA,
    #[serde(rename = "4B")]
    FourB,
    #[serde(rename = "5A")]
    FiveA,
    #[serde(rename = "6A")]
    SixA,
}

impl NsLabel {
    pub const ALL: [NsLabel; 8] = [
        NsLabel::TwoA,
        NsLabel::TwoB,
        NsLabel::ThreeA,
        NsLabel::ThreeC,
        NsLabel::FourA,
        NsLabel::FourB,
        NsLabel::FiveA,
        NsLabel::SixA,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NsLabel::TwoA => "2A",
            NsLabel::TwoB => "2B",
            NsLabel::ThreeA => "3A",
            NsLabel::ThreeC => "3C",
            NsLabel::FourA => "4A",
            NsLabel::FourB => "4B",
            NsLabel::FiveA => "5A",
            NsLabel::SixA => "6A",
        }
    }

    /// The numeral: number of axes in the dihedral closure of the pair.
    pub fn period(self) -> usize {
        match self {
            NsLabel::TwoA | NsLabel::TwoB => 2,
            NsLabel::ThreeA | NsLabel::ThreeC => 3,
            NsLabel::FourA | NsLabel::FourB => 4,
            NsLabel::FiveA => 5,
            NsLabel::SixA => 6,
        }
    }

    /// Labels available to a pair whose axes close up after `period` steps.
    pub fn for_period(period: usize) -> &'static [NsLabel] {
        match period {
            1 | 2 => &[NsLabel::TwoA, NsLabel::TwoB],
            3 => &[NsLabel::ThreeA, NsLabel::ThreeC],
            4 => &[NsLabel::FourA, NsLabel::FourB],
            5 => &[NsLabel::FiveA],
            6 => &[NsLabel::SixA],
            _ => &[],
        }
    }

    pub fn expected_dim(self) -> usize {
        match self {
            NsLabel::TwoB => 2,
            NsLabel::TwoA | NsLabel::ThreeC => 3,
            NsLabel::ThreeA => 4,
            NsLabel::FourA | NsLabel::FourB => 5,
            NsLabel::FiveA => 6,
            NsLabel::SixA => 8,
        }
    }

    fn data(self) -> &'static str {
        match self {
            NsLabel::TwoA => include_str!("../data/ns/2A.json"),
            NsLabel::TwoB => include_str!("../data/ns/2B.json"),
            NsLabel::ThreeA => include_str!("../data/ns/3A.json"),
            NsLabel::ThreeC => include_str!("../data/ns/3C.json"),
            NsLabel::FourA => include_str!("../data/ns/4A.json"),
            NsLabel::FourB => include_str!("../data/ns/4B.json"),
            NsLabel::FiveA => include_str!("../data/ns/5A.json"),
            NsLabel::SixA => include_str!("../data/ns/6A.json"),
        }
    }
}

impl fmt::Display for NsLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NsLabel {
    type Err = NsError;
    fn from_str(s: &str) -> Result<Self, NsError> {
        NsLabel::ALL.into_iter().find(|l| l.as_str() == s).ok_or_else(|| NsError::UnknownLabel(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NsError {
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("malformed data: {0}")]
    Malformed(String),
    #[error("data for {0} failed verification: {1}")]
    Verification(NsLabel, String),
    #[error("axis index {0} out of range")]
    BadAxis(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("generated subalgebra matches no known label")]
    Unidentified,
}

/// On-disk layout of one algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NsFile {
    pub label: NsLabel,
    pub dim: usize,
    pub basis: Vec<String>,
    pub axes: Vec<usize>,
    /// Dense products `e_i e_j` for `i <= j`, row by row.
    pub products: Vec<Vec<Rational>>,
    pub frobenius: Vec<Vec<Rational>>,
}

/// A vector written as a combination of axes and products of two axes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisExpression {
    pub linear: Vec<(usize, Rational)>,
    pub products: Vec<(usize, usize, Rational)>,
}

#[derive(Clone, Debug)]
pub struct NsAlgebra {
    pub label: NsLabel,
    pub basis: Vec<String>,
    /// Axis `a_i` is basis vector `axes[i]`; `a_0, a_1` generate.
    pub axes: Vec<usize>,
    pub algebra: Algebra,
    pub frobenius: QMatrix,
}

impl NsAlgebra {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn axis(&self, i: usize) -> SparseVec {
        SparseVec::unit(self.axes[i % self.axes.len()])
    }

    pub fn to_file(&self) -> NsFile {
        let n = self.dim();
        NsFile {
            label: self.label,
            dim: n,
            basis: self.basis.clone(),
            axes: self.axes.clone(),
            products: self.algebra.products().iter().map(|p| p.to_dense(n)).collect(),
            frobenius: self.frobenius.to_rows(),
        }
    }

    /// Every basis vector as a combination of axes and axis products.
    /// Axes map to themselves; products are tried in lexicographic order.
    pub fn basis_expressions(&self) -> Vec<AxisExpression> {
        let n = self.axes.len();
        let mut span: Vec<SparseVec> = Vec::new();
        let mut terms: Vec<(usize, usize)> = Vec::new();
        let mut ech = Echelon::new();
        for i in 0..n {
            if ech.insert(self.axis(i)) {
                span.push(self.axis(i));
                terms.push((i, i));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let p = self.algebra.mul(&self.axis(i), &self.axis(j));
                if ech.insert(p.clone()) {
                    span.push(p);
                    terms.push((i, j));
                }
            }
        }
        let cb = CoordinateBasis::new(&span);
        (0..self.dim())
            .map(|b| {
                let c = cb.coords(&SparseVec::unit(b)).expect("algebra is spanned by axis products");
                let mut e = AxisExpression { linear: Vec::new(), products: Vec::new() };
                for (t, x) in c.iter() {
                    let (i, j) = terms[t];
                    if i == j {
                        e.linear.push((i, x.clone()));
                    } else {
                        e.products.push((i, j, x.clone()));
                    }
                }
                e
            })
            .collect()
    }
}

pub fn parse_ns(json: &str) -> Result<NsAlgebra, NsError> {
    let f: NsFile = serde_json::from_str(json).map_err(|e| NsError::Malformed(e.to_string()))?;
    from_file(f)
}

pub fn from_file(f: NsFile) -> Result<NsAlgebra, NsError> {
    let bad = |m: &str| NsError::Malformed(m.to_string());
    if f.basis.len() != f.dim || f.frobenius.len() != f.dim {
        return Err(bad("dimension disagrees with basis or form size"));
    }
    if f.products.iter().any(|p| p.len() != f.dim) || f.frobenius.iter().any(|r| r.len() != f.dim) {
        return Err(bad("row of wrong length"));
    }
    if f.axes.len() < 2 || f.axes.iter().any(|&a| a >= f.dim) {
        return Err(bad("axes out of range"));
    }
    let products = f.products.iter().map(|p| SparseVec::from_dense(p)).collect();
    let algebra = Algebra::from_products(f.dim, products)?;
    Ok(NsAlgebra { label: f.label, basis: f.basis, axes: f.axes, algebra, frobenius: QMatrix::from_rows(f.frobenius) })
}

/// Loads and verifies the shipped data for `label`.
pub fn load_ns(label: NsLabel) -> Result<NsAlgebra, NsError> {
    let a = parse_ns(label.data())?;
    let report = verify_ns(&a);
    if let Some(c) = report.checks.iter().find(|c| !c.passed) {
        return Err(NsError::Verification(label, format!("{}: {}", c.name, c.detail)));
    }
    Ok(a)
}

/// All eight algebras, loaded once.
pub fn ns_catalog() -> &'static [NsAlgebra] {
    static CELL: OnceLock<Vec<NsAlgebra>> = OnceLock::new();
    CELL.get_or_init(|| NsLabel::ALL.iter().map(|&l| load_ns(l).expect("shipped data verifies")).collect())
}

pub fn ns(label: NsLabel) -> &'static NsAlgebra {
    &ns_catalog()[NsLabel::ALL.iter().position(|&l| l == label).unwrap()]
}

pub fn mk_miyamoto(a: &NsAlgebra, axis: usize) -> Result<QMatrix, NsError> {
    if axis >= a.axes.len() {
        return Err(NsError::BadAxis(axis));
    }
    let imgs = a.algebra.miyamoto(&a.axis(axis))?;
    Ok(QMatrix::from_rows(imgs.iter().map(|v| v.to_dense(a.dim())).collect()))
}

/// Closes a set of linear maps (given by basis images) under composition.
pub fn generated_group_order(maps: &[Vec<SparseVec>], limit: usize) -> Option<usize> {
    let n = maps.first().map_or(0, |m| m.len());
    let id: Vec<SparseVec> = (0..n).map(SparseVec::unit).collect();
    let mut seen: HashSet<Vec<SparseVec>> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(g) = frontier.pop() {
        for m in maps {
            let h: Vec<SparseVec> = g.iter().map(|v| crate::linalg::combine(v, m)).collect();
            if seen.insert(h.clone()) {
                if seen.len() > limit {
                    return None;
                }
                frontier.push(h);
            }
        }
    }
    Some(seen.len())
}

pub fn verify_ns(a: &NsAlgebra) -> CheckReport {
    let mut r = CheckReport::default();
    r.push(Check::new(
        "dimension",
        a.dim() == a.label.expected_dim(),
        format!("{} (expected {})", a.dim(), a.label.expected_dim()),
    ));
    r.push(Check::new("axis count", a.axes.len() == a.label.period(), format!("{} axes", a.axes.len())));
    let mut taus = Vec::new();
    for i in 0..a.axes.len() {
        match a.algebra.check_axis(&a.axis(i)) {
            Ok(_) => r.push(Check::new(&format!("axis a{i} fusion"), true, String::new())),
            Err(e) => r.push(Check::new(&format!("axis a{i} fusion"), false, e.to_string())),
        }
        if let Ok(t) = a.algebra.miyamoto(&a.axis(i)) {
            let auto = a.algebra.is_automorphism(&t);
            let sq: Vec<SparseVec> = t.iter().map(|v| crate::linalg::combine(v, &t)).collect();
            let inv = sq.iter().enumerate().all(|(k, v)| *v == SparseVec::unit(k));
            r.push(Check::new(
                &format!("axis a{i} miyamoto"),
                auto && inv,
                format!("automorphism {auto}, involutive {inv}"),
            ));
            taus.push(t);
        }
    }
    let f = &a.frobenius;
    r.push(Check::new("form symmetric", f.is_symmetric(), String::new()));
    r.push(Check::new("form associates", a.algebra.form_associates(f), String::new()));
    let nonzero = a.axes.iter().all(|&i| !f.get(i, i).is_zero());
    r.push(Check::new("form nonzero on axes", nonzero, String::new()));
    if taus.len() == a.axes.len() {
        // Opposite axes of an even polygon share a Miyamoto map, so the
        // rotation acts with order n/2 there.
        let n = a.label.period();
        let want = match n {
            2 => 1,
            _ if n % 2 == 1 => 2 * n,
            _ => n,
        };
        let got = generated_group_order(&taus, 64);
        r.push(Check::new("miyamoto group order", got == Some(want), format!("{got:?} (expected {want})")));
        let closure = axis_closure(&a.algebra, &[a.axis(0), a.axis(1)]);
        let all: HashSet<SparseVec> = (0..a.axes.len()).map(|i| a.axis(i)).collect();
        r.push(Check::new(
            "axes are the closure of a0, a1",
            closure.iter().cloned().collect::<HashSet<_>>() == all,
            format!("{} axes in closure", closure.len()),
        ));
    }
    r
}

/// Closes `axes` under the Miyamoto maps of its members.
pub fn axis_closure(alg: &Algebra, axes: &[SparseVec]) -> Vec<SparseVec> {
    let mut out: Vec<SparseVec> = Vec::new();
    let mut seen = HashSet::new();
    for a in axes {
        if seen.insert(a.clone()) {
            out.push(a.clone());
        }
    }
    let mut taus: Vec<Vec<SparseVec>> = Vec::new();
    loop {
        while taus.len() < out.len() {
            match alg.miyamoto(&out[taus.len()]) {
                Ok(t) => taus.push(t),
                Err(_) => return out,
            }
        }
        let mut fresh = Vec::new();
        for t in &taus {
            for x in &out {
                let y = crate::linalg::combine(x, t);
                if seen.insert(y.clone()) {
                    fresh.push(y);
                }
            }
        }
        if fresh.is_empty() {
            return out;
        }
        out.extend(fresh);
    }
}

/// Isomorphism invariants of the subalgebra generated by two axes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub dim: usize,
    pub axes: usize,
    pub eigen_dims: [usize; 4],
    pub zero_pairs: usize,
}

pub fn fingerprint(alg: &Algebra, a: &SparseVec, b: &SparseVec) -> Result<Fingerprint, NsError> {
    let span = alg.generated_subalgebra(&[a.clone(), b.clone()]);
    let sub = alg.restrict(&span).ok_or(NsError::Unidentified)?;
    let cb = CoordinateBasis::new(&span);
    let a2 = cb.coords(a).ok_or(NsError::Unidentified)?;
    let b2 = cb.coords(b).ok_or(NsError::Unidentified)?;
    let eigen_dims = sub.eigenspaces(&a2)?.dims();
    let axes = axis_closure(&sub, &[a2, b2]);
    let mut zero_pairs = 0;
    for i in 0..axes.len() {
        for j in i + 1..axes.len() {
            if sub.mul(&axes[i], &axes[j]).is_zero() {
                zero_pairs += 1;
            }
        }
    }
    Ok(Fingerprint { dim: sub.dim(), axes: axes.len(), eigen_dims, zero_pairs })
}

fn label_fingerprints() -> &'static [(NsLabel, Fingerprint)] {
    static CELL: OnceLock<Vec<(NsLabel, Fingerprint)>> = OnceLock::new();
    CELL.get_or_init(|| {
        ns_catalog().iter().map(|a| (a.label, fingerprint(&a.algebra, &a.axis(0), &a.axis(1)).unwrap())).collect()
    })
}

/// Names the algebra generated by two axes of `alg`.
pub fn identify_pair(alg: &Algebra, a: &SparseVec, b: &SparseVec) -> Result<NsLabel, NsError> {
    let fp = fingerprint(alg, a, b)?;
    label_fingerprints().iter().find(|(_, f)| *f == fp).map(|(l, _)| *l).ok_or(NsError::Unidentified)
}

/// A pair of axis indices with its label.
pub type LabeledPair = ((usize, usize), NsLabel);

/// Label of every pair of distinct axes `(i, j)`, `i < j`.
pub fn pair_suborbits(a: &NsAlgebra) -> Result<Vec<LabeledPair>, NsError> {
    let n = a.axes.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(((i, j), identify_pair(&a.algebra, &a.axis(i), &a.axis(j))?));
        }
    }
    Ok(out)
}

/// Label of the pair `(a_i, a_j)` inside an algebra of type `label`.
pub fn sub_label(label: NsLabel, i: usize, j: usize) -> NsLabel {
    static CELL: OnceLock<Vec<Vec<LabeledPair>>> = OnceLock::new();
    let table =
        CELL.get_or_init(|| ns_catalog().iter().map(|a| pair_suborbits(a).expect("catalog pairs identify")).collect());
    let n = label.period();
    let (i, j) = (i % n, j % n);
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let k = NsLabel::ALL.iter().position(|&l| l == label).unwrap();
    table[k].iter().find(|(p, _)| *p == (i, j)).map(|(_, l)| *l).expect("distinct axes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::combine;

    #[test]
    fn all_eight_load_with_expected_dims() {
        let dims: Vec<usize> = ns_catalog().iter().map(|a| a.dim()).collect();
        assert_eq!(dims, vec![3, 2, 4, 3, 5, 5, 6, 8]);
        for a in ns_catalog() {
            assert!(verify_ns(a).passed(), "{}", a.label);
        }
    }

    #[test]
    fn two_b_axes_annihilate() {
        let a = ns(NsLabel::TwoB);
        assert!(a.algebra.mul(&a.axis(0), &a.axis(1)).is_zero());
        assert_eq!(mk_miyamoto(a, 0).unwrap(), QMatrix::identity(2));
    }

    #[test]
    fn miyamoto_reflects_axis_indices() {
        for a in ns_catalog() {
            let n = a.axes.len();
            for k in 0..n {
                let t = a.algebra.miyamoto(&a.axis(k)).unwrap();
                for i in 0..n {
                    let img = combine(&a.axis(i), &t);
                    let want = if a.label.period() <= 2 { i } else { (2 * k + n - i) % n };
                    assert_eq!(img, a.axis(want), "{} tau_{k} on a{i}", a.label);
                }
            }
        }
    }

    #[test]
    fn three_a_miyamoto_swaps_other_axes() {
        let a = ns(NsLabel::ThreeA);
        let m = mk_miyamoto(a, 0).unwrap();
        assert_eq!(m.row_vec(a.axes[1]), a.axis(2));
        assert_eq!(m.mul(&m).unwrap(), QMatrix::identity(a.dim()));
        assert!(mk_miyamoto(a, 7).is_err());
    }

    #[test]
    fn five_a_miyamoto_group_is_dihedral_of_order_ten() {
        let a = ns(NsLabel::FiveA);
        let taus: Vec<_> = (0..5).map(|i| a.algebra.miyamoto(&a.axis(i)).unwrap()).collect();
        assert_eq!(generated_group_order(&taus, 100), Some(10));
    }

    #[test]
    fn sub_pair_labels() {
        assert_eq!(sub_label(NsLabel::FourA, 0, 2), NsLabel::TwoB);
        assert_eq!(sub_label(NsLabel::FourB, 1, 3), NsLabel::TwoA);
        assert_eq!(sub_label(NsLabel::SixA, 0, 2), NsLabel::ThreeA);
        assert_eq!(sub_label(NsLabel::SixA, 1, 4), NsLabel::TwoA);
        assert_eq!(sub_label(NsLabel::SixA, 0, 1), NsLabel::SixA);
        assert_eq!(sub_label(NsLabel::FiveA, 0, 2), NsLabel::FiveA);
        for a in ns_catalog() {
            let pairs = pair_suborbits(a).unwrap();
            assert!(pairs.iter().any(|(p, l)| *p == (0, 1) && *l == a.label));
        }
    }

    #[test]
    fn pair_labels_are_invariant_under_miyamoto_maps() {
        for a in ns_catalog() {
            let pairs = pair_suborbits(a).unwrap();
            for k in 0..a.axes.len() {
                let t = a.algebra.miyamoto(&a.axis(k)).unwrap();
                for ((i, j), l) in &pairs {
                    let x = combine(&a.axis(*i), &t);
                    let y = combine(&a.axis(*j), &t);
                    assert_eq!(identify_pair(&a.algebra, &x, &y).unwrap(), *l);
                }
            }
        }
    }

    #[test]
    fn basis_expressions_evaluate_back() {
        for a in ns_catalog() {
            for (b, e) in a.basis_expressions().iter().enumerate() {
                let mut v = SparseVec::new();
                for (i, c) in &e.linear {
                    v.axpy(c, &a.axis(*i));
                }
                for (i, j, c) in &e.products {
                    v.axpy(c, &a.algebra.mul(&a.axis(*i), &a.axis(*j)));
                }
                assert_eq!(v, SparseVec::unit(b), "{} basis {b}", a.label);
            }
        }
    }

    #[test]
    fn every_single_entry_perturbation_is_caught() {
        for a in ns_catalog() {
            let file = a.to_file();
            for p in 0..file.products.len() {
                for k in 0..file.dim {
                    let mut f = file.clone();
                    f.products[p][k] += &Rational::ONE;
                    let broken = from_file(f).unwrap();
                    assert!(!verify_ns(&broken).passed(), "{} product {p} coord {k}", a.label);
                }
            }
        }
    }

    #[test]
    fn corrupted_two_b_fails_fusion() {
        let mut f = ns(NsLabel::TwoB).to_file();
        // a0 a1 = a1/4 makes a1 a 1/4-eigenvector whose square is itself.
        f.products[1] = vec![Rational::ZERO, crate::linalg::q(1, 4)];
        let report = verify_ns(&from_file(f).unwrap());
        assert!(report.failures().any(|c| c.name.contains("fusion")));
    }

    #[test]
    fn labels_round_trip() {
        for l in NsLabel::ALL {
            assert_eq!(l.as_str().parse::<NsLabel>().unwrap(), l);
            assert_eq!(serde_json::to_string(&l).unwrap(), format!("\"{l}\""));
        }
        assert!("7A".parse::<NsLabel>().is_err());
        assert!(parse_ns("{}").is_err());
    }
}
