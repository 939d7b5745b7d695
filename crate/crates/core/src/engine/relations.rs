use crate::fusion::{projection_poly, Eigen};
use crate::linalg::{combine, kernel_of_images, q, Echelon, Rational, SparseVec};

use super::partial::PartialAlgebra;

/// An axis-orbit representative together with its involution as a word in
/// the generators of the partial algebra.
#[derive(Clone, Debug)]
pub struct AxisRep {
    pub axis: usize,
    pub tau_word: Vec<usize>,
}

/// Known eigenvectors of one axis inside `W`.
struct AxisData {
    cols: Vec<SparseVec>,
    plus: Vec<SparseVec>,
    minus: Vec<SparseVec>,
}

fn basis_of(vs: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rows().to_vec()
}

fn push(out: &mut Vec<SparseVec>, v: SparseVec) {
    if !v.is_zero() {
        out.push(v);
    }
}

/// Combinations of `basis` whose images under `f` stay inside `W`,
/// returned with those images.
fn stays_known(pa: &PartialAlgebra, basis: &[SparseVec], imgs: &[SparseVec]) -> Vec<(SparseVec, SparseVec)> {
    let outside: Vec<SparseVec> = imgs.iter().map(|v| v.slice(pa.known, pa.dim)).collect();
    kernel_of_images(&outside).into_iter().map(|c| (combine(&c, basis), combine(&c, imgs))).collect()
}

fn axis_data(pa: &PartialAlgebra, rep: &AxisRep) -> AxisData {
    let k = pa.known;
    let t: Vec<SparseVec> = (0..k).map(|j| pa.act_word(&SparseVec::unit(j), &rep.tau_word)).collect();
    let plus = basis_of((0..k).map(|j| SparseVec::unit(j).add(&t[j])));
    let minus = basis_of((0..k).map(|j| SparseVec::unit(j).sub(&t[j])));
    AxisData { cols: pa.ad_columns(&pa.axes[rep.axis]), plus, minus }
}

/// Relations forced on the current partial algebra. They are not closed
/// under the group or products; see [`close_relations`].
pub fn find_relations(pa: &PartialAlgebra, reps: &[AxisRep]) -> Vec<SparseVec> {
    let mut out = Vec::new();
    for c in &pa.copies {
        let Some(imgs) = &c.images else { continue };
        let alg = crate::ns::ns(c.label);
        let d = imgs.len();
        for i in 0..d {
            if !pa.in_known(&imgs[i]) {
                continue;
            }
            for j in i..d {
                if !pa.in_known(&imgs[j]) {
                    continue;
                }
                let rhs = combine(alg.algebra.product(i, j), imgs);
                push(&mut out, pa.mul(&imgs[i], &imgs[j]).sub(&rhs));
            }
        }
    }
    for rep in reps {
        let a = &pa.axes[rep.axis];
        if !pa.in_known(a) {
            continue;
        }
        push(&mut out, pa.mul(a, a).sub(a));
        let data = axis_data(pa, rep);
        axis_relations(pa, &data, &mut out);
    }
    out
}

fn axis_relations(pa: &PartialAlgebra, data: &AxisData, out: &mut Vec<SparseVec>) {
    let ad = |v: &SparseVec| combine(v, &data.cols);
    let k32 = Eigen::ThirtySecond.value();
    // Odd part is the 1/32-eigenspace.
    for w in &data.minus {
        push(out, ad(w).sub(&w.scale(&k32)));
    }
    // Even part is annihilated by x(x-1)(x-1/4).
    let ad1: Vec<SparseVec> = data.plus.iter().map(ad).collect();
    let d1 = stays_known(pa, &data.plus, &ad1);
    let (d1_basis, d1_imgs): (Vec<_>, Vec<_>) = d1.into_iter().unzip();
    let d1_basis_ys = d1_basis.clone();
    let ad2: Vec<SparseVec> = d1_imgs.iter().map(ad).collect();
    for (w1, w2) in stays_known(pa, &d1_imgs, &ad2) {
        let mut r = ad(&w2);
        r.axpy(&q(-5, 4), &w2);
        r.axpy(&q(1, 4), &w1);
        push(out, r);
    }
    // Fusion law on exact eigenvectors.
    let even = [Eigen::One, Eigen::Zero, Eigen::Quarter];
    let spaces: Vec<Vec<SparseVec>> = even
        .iter()
        .map(|e| {
            let imgs: Vec<SparseVec> = data.plus.iter().zip(&ad1).map(|(b, ab)| ab.sub(&b.scale(&e.value()))).collect();
            kernel_of_images(&imgs).iter().map(|c| combine(c, &data.plus)).collect()
        })
        .collect();
    // a(xy) = x(ay) whenever x lies in A_1 + A_0.
    let mut ys: Vec<(SparseVec, SparseVec)> = data.minus.iter().map(|w| (w.clone(), w.scale(&k32))).collect();
    ys.extend(d1_basis_ys.into_iter().zip(d1_imgs.iter().cloned()));
    for x in spaces[0].iter().chain(&spaces[1]) {
        for (y, ay) in &ys {
            let p = pa.mul(x, y);
            if pa.in_known(&p) {
                push(out, ad(&p).sub(&pa.mul(x, ay)));
            }
        }
    }
    // Eigenvectors known in V: fusion products with a single allowed
    // eigenvalue and the projections of D1 vectors.
    let mut known: Vec<(SparseVec, Rational)> = Vec::new();
    for x in 0..3 {
        for y in x..3 {
            for (i, u) in spaces[x].iter().enumerate() {
                let start = if x == y { i } else { 0 };
                for v in &spaces[y][start..] {
                    let p = pa.mul(u, v);
                    if let [single] = crate::fusion::fuse(even[x], even[y]) {
                        if !p.is_zero() && !pa.in_known(&p) {
                            known.push((p.clone(), single.value()));
                        }
                    }
                    fusion_relation(pa, &ad, even[x], even[y], p, out);
                }
            }
        }
    }
    for (w, w1) in d1_basis.iter().zip(&d1_imgs) {
        let w2 = ad(w1);
        if pa.in_known(&w2) {
            continue;
        }
        for e in even {
            let c = projection_poly(e, &even);
            let mut u = w.scale(&c[0]);
            u.axpy(&c[1], w1);
            u.axpy(&c[2], &w2);
            if !u.is_zero() {
                known.push((u, e.value()));
            }
        }
    }
    // A combination of known eigenvectors lying in W has a computable
    // product with the axis.
    let outside: Vec<SparseVec> = known.iter().map(|(v, _)| v.slice(pa.known, pa.dim)).collect();
    for c in kernel_of_images(&outside) {
        let mut w = SparseVec::new();
        let mut aw = SparseVec::new();
        for (i, x) in c.iter() {
            w.axpy(x, &known[i].0);
            aw.axpy(&(x * &known[i].1), &known[i].0);
        }
        push(out, ad(&w).sub(&aw));
    }
}

fn fusion_relation(
    pa: &PartialAlgebra,
    ad: &dyn Fn(&SparseVec) -> SparseVec,
    x: Eigen,
    y: Eigen,
    p: SparseVec,
    out: &mut Vec<SparseVec>,
) {
    use Eigen::*;
    let allowed = crate::fusion::fuse(x, y);
    if allowed.is_empty() {
        push(out, p);
        return;
    }
    if !pa.in_known(&p) {
        return;
    }
    let ap = ad(&p);
    match allowed {
        [single] => push(out, ap.sub(&p.scale(&single.value()))),
        [One, Zero] | [Zero, One] if pa.in_known(&ap) => {
            push(out, ad(&ap).sub(&ap));
        }
        _ => {}
    }
}

/// Smallest subspace containing `rels` that is invariant under the group and
/// contains `r w` for every `r` in it and in `W` and every `w` in `W`.
pub fn close_relations(pa: &PartialAlgebra, rels: Vec<SparseVec>) -> Echelon {
    let mut ech = Echelon::new();
    let mut work: Vec<SparseVec> = Vec::new();
    for r in rels {
        if ech.insert(r.clone()) {
            work.push(r);
        }
    }
    let mut done = Echelon::new();
    loop {
        while let Some(v) = work.pop() {
            for g in 0..pa.gen_matrices.len() {
                let img = pa.act(&v, g);
                if ech.insert(img.clone()) {
                    work.push(img);
                }
            }
        }
        let fresh: Vec<SparseVec> = ech.rows_within(pa.known).filter(|r| !done.contains(r)).cloned().collect();
        if fresh.is_empty() {
            return ech;
        }
        for r in fresh {
            if !done.insert(r.clone()) {
                continue;
            }
            for img in pa.ad_columns(&r) {
                if ech.insert(img.clone()) {
                    work.push(img);
                }
            }
        }
    }
}
