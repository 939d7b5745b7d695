//! Invariants of completed algebras: Frobenius form and its signature,
//! radical quotient, m-closure, primitivity and the 2-generated
//! subalgebras named by the shape.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Check, CheckReport};
use crate::config::Shape;
use crate::linalg::{
    kernel_of_images, sym_signature, CoordinateBasis, Echelon, QMatrix, Rational, Signature, SparseVec,
};
use crate::ns::{axis_closure, identify_pair, NsLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    None,
    Indef,
    Semi,
    Pos,
}

impl FormKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FormKind::None => "none",
            FormKind::Indef => "indef",
            FormKind::Semi => "semi",
            FormKind::Pos => "pos",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusForm {
    /// Gram matrix on the basis.
    pub form: QMatrix,
    pub signature: Signature,
    /// Dimension of the solution space left after normalizing; nonzero
    /// means `form` is one choice among many and the case is flagged.
    pub free_dims: usize,
}

impl FrobeniusForm {
    pub fn kind(&self) -> FormKind {
        if self.signature.is_positive_definite() {
            FormKind::Pos
        } else if self.signature.is_positive_semidefinite() {
            FormKind::Semi
        } else {
            FormKind::Indef
        }
    }
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

/// Solves for a symmetric associating form with `(p, p) = 1` for each axis
/// in `normalize`. Free parameters are set to zero. `None` when there is
/// no solution or the solution vanishes on some axis.
pub fn frobenius_form(alg: &Algebra, axes: &[SparseVec], normalize: &[usize]) -> Option<FrobeniusForm> {
    let n = alg.dim();
    let unknowns = n * (n + 1) / 2;
    // Coordinate 0 carries the right-hand side; unknown u sits at u + 1.
    let var = |i: usize, j: usize| pair_index(n, i, j) + 1;
    let mut ech = Echelon::new();
    for j in 0..n {
        for i in 0..n {
            for k in i..n {
                let mut row = SparseVec::new();
                for (t, c) in alg.product(i, j).iter() {
                    row.axpy(c, &SparseVec::unit(var(t, k)));
                }
                for (t, c) in alg.product(j, k).iter() {
                    row.axpy(&-c.clone(), &SparseVec::unit(var(i, t)));
                }
                if !row.is_zero() {
                    ech.insert(row);
                }
            }
        }
    }
    for &p in normalize {
        let a = &axes[p];
        let mut row = SparseVec::unit(0).scale(&Rational::from_int(-1));
        for (x, cx) in a.iter() {
            for (y, cy) in a.iter() {
                row.axpy(&(cx * cy), &SparseVec::unit(var(x, y)));
            }
        }
        ech.insert(row);
    }
    if ech.is_pivot(0) {
        return None;
    }
    let mut values = vec![Rational::ZERO; unknowns];
    for r in ech.rows() {
        let p = r.max_index().expect("nonzero row");
        values[p - 1] = -r.get(0);
    }
    let free_dims = unknowns - ech.rank();
    let mut form = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            form.set(i, j, values[pair_index(n, i, j)].clone());
        }
    }
    if axes.iter().any(|a| bilinear(&form, a, a).is_zero()) {
        return None;
    }
    let signature = sym_signature(&form).expect("form is symmetric");
    Some(FrobeniusForm { form, signature, free_dims })
}

pub fn bilinear(form: &QMatrix, u: &SparseVec, v: &SparseVec) -> Rational {
    let mut s = Rational::ZERO;
    for (i, a) in u.iter() {
        for (j, b) in v.iter() {
            s += &(&(a * b) * form.get(i, j));
        }
    }
    s
}

/// Echelon basis of the radical of a symmetric form.
pub fn radical(form: &QMatrix) -> Echelon {
    let n = form.nrows();
    let cols: Vec<SparseVec> = (0..n).map(|j| form.row_vec(j)).collect();
    Echelon::from_vecs(kernel_of_images(&cols).iter())
}

/// Least `m` such that products of at most `m` axes span the algebra;
/// `None` when the axes do not generate it.
pub fn m_closure(alg: &Algebra, axes: &[SparseVec]) -> Option<usize> {
    let mut ech = Echelon::new();
    let mut levels: Vec<Vec<SparseVec>> = vec![axes.iter().filter(|a| ech.insert((*a).clone())).cloned().collect()];
    let mut m = 1;
    while ech.rank() < alg.dim() {
        let k = m + 1;
        let mut fresh = Vec::new();
        for i in 1..=k / 2 {
            let j = k - i;
            if j > levels.len() {
                continue;
            }
            for u in &levels[i - 1] {
                for v in &levels[j - 1] {
                    let p = alg.mul(u, v);
                    if ech.insert(p.clone()) {
                        fresh.push(p);
                    }
                }
            }
        }
        if k > 2 * alg.dim() + 2 {
            return None;
        }
        levels.push(fresh);
        m = k;
    }
    Some(m)
}

/// True when every axis has a one-dimensional 1-eigenspace.
pub fn primitivity(alg: &Algebra, axes: &[SparseVec]) -> bool {
    axes.iter().all(|a| {
        let shifted: Vec<SparseVec> =
            alg.ad_columns(a).into_iter().enumerate().map(|(j, c)| c.sub(&SparseVec::unit(j))).collect();
        kernel_of_images(&shifted).len() == 1
    })
}

/// Checks the subalgebra generated by each pair-orbit representative
/// against the label the shape assigns to it, allowing quotients.
pub fn verify_shape(alg: &Algebra, axes: &[SparseVec], shape: &Shape) -> CheckReport {
    let mut report = CheckReport::default();
    for (o, &label) in shape.orbits.iter().zip(&shape.labels) {
        let (p, q) = o.rep;
        let name = format!("pair ({p}, {q}) is {label}");
        report.push(match check_pair(alg, &axes[p], &axes[q], label) {
            Ok(detail) => Check::new(&name, true, detail),
            Err(detail) => Check::new(&name, false, detail),
        });
    }
    report
}

fn check_pair(alg: &Algebra, a: &SparseVec, b: &SparseVec, label: NsLabel) -> Result<String, String> {
    let span = alg.generated_subalgebra(&[a.clone(), b.clone()]);
    let sub = alg.restrict(&span).ok_or("span not closed")?;
    let cb = CoordinateBasis::new(&span);
    let (a2, b2) = (cb.coords(a).ok_or("axis outside span")?, cb.coords(b).ok_or("axis outside span")?);
    for x in [&a2, &b2] {
        sub.check_axis(x).map_err(|e| e.to_string())?;
    }
    let closure = axis_closure(&sub, &[a2.clone(), b2.clone()]);
    let detail = format!("dim {}, {} axes", sub.dim(), closure.len());
    if sub.dim() > label.expected_dim() || !label.period().is_multiple_of(closure.len()) {
        return Err(detail);
    }
    if sub.dim() == label.expected_dim() {
        let found = identify_pair(&sub, &a2, &b2).map_err(|e| e.to_string())?;
        if found != label {
            return Err(format!("{detail}, generates {found}"));
        }
    }
    Ok(detail)
}

/// The columns of Table-2-style reports for one completed algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraResult {
    pub dim: usize,
    pub m_closure: Option<usize>,
    pub form: Option<FrobeniusForm>,
    pub form_kind: FormKind,
    pub primitive: bool,
    pub shape_verified: bool,
    pub shape_report: CheckReport,
    pub radical_quotient: Option<Box<AlgebraResult>>,
}

/// Analyzes `alg` with axes `axes`; one axis per orbit of the shape's axet
/// is normalized to length 1. Recurses once into the radical quotient.
pub fn analyze(alg: &Algebra, axes: &[SparseVec], shape: &Shape) -> AlgebraResult {
    let normalize: Vec<usize> = shape.axet.orbits.iter().map(|r| r.start).collect();
    let form = frobenius_form(alg, axes, &normalize);
    let shape_report = verify_shape(alg, axes, shape);
    let radical_quotient = form.as_ref().and_then(|f| {
        let rad = radical(&f.form);
        if rad.is_empty() {
            return None;
        }
        let (quot, images) = alg.quotient(&rad);
        let q_axes: Vec<SparseVec> = axes.iter().map(|a| crate::linalg::combine(a, &images)).collect();
        Some(Box::new(analyze(&quot, &q_axes, shape)))
    });
    AlgebraResult {
        dim: alg.dim(),
        m_closure: m_closure(alg, axes),
        form_kind: form.as_ref().map_or(FormKind::None, FrobeniusForm::kind),
        form,
        primitive: primitivity(alg, axes),
        shape_verified: shape_report.passed(),
        shape_report,
        radical_quotient,
    }
}
