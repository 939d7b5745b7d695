#![allow(dead_code)]

use axialforge::algebra::Algebra;
use axialforge::cases::{resolve, Case, CaseId};
use axialforge::engine::{checkpoint_load, checkpoint_save, construct, resume, Budget, Construction, Verdict};
use axialforge::linalg::{combine, sym_signature, Echelon, QMatrix, Rational, SparseVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn case(id: &str) -> Case {
    resolve(&id.parse::<CaseId>().unwrap()).unwrap_or_else(|e| panic!("{id}: {e}"))
}

/// Every Miyamoto map is an automorphism whose square is the identity.
pub fn miyamoto_maps_are_involutive_automorphisms(alg: &Algebra, axes: &[SparseVec]) -> Result<(), String> {
    for (i, a) in axes.iter().enumerate() {
        let t = alg.miyamoto(a).map_err(|e| format!("axis {i}: {e}"))?;
        if !alg.is_automorphism(&t) {
            return Err(format!("Miyamoto map of axis {i} is not an automorphism"));
        }
        for (j, img) in t.iter().enumerate() {
            if combine(img, &t) != SparseVec::unit(j) {
                return Err(format!("Miyamoto map of axis {i} has order above 2"));
            }
        }
    }
    Ok(())
}

/// The group generators act by automorphisms and permute the axes.
pub fn product_is_equivariant(c: &Construction) -> Result<(), String> {
    let alg = c.algebra.as_ref().ok_or("no algebra")?;
    for (g, m) in c.gen_matrices.iter().enumerate() {
        if !alg.is_automorphism(m) {
            return Err(format!("generator {g} does not respect the product"));
        }
        for a in &c.axes {
            if !c.axes.contains(&combine(a, m)) {
                return Err(format!("generator {g} does not permute the axes"));
            }
        }
    }
    Ok(())
}

/// Smallest `m` with products of at most `m` axes spanning the algebra.
pub fn closure_length(alg: &Algebra, axes: &[SparseVec]) -> Option<usize> {
    let n = alg.dim();
    let mut span = Echelon::new();
    let mut levels: Vec<Vec<SparseVec>> = vec![Vec::new()];
    let mut first = Vec::new();
    for a in axes {
        if span.insert(a.clone()) {
            first.push(a.clone());
        }
    }
    levels.push(first);
    let mut k = 1;
    while span.rank() < n {
        k += 1;
        if k > 2 * n + 2 {
            return None;
        }
        let mut new = Vec::new();
        for i in 1..=k / 2 {
            for u in &levels[i] {
                for v in &levels[k - i] {
                    let p = alg.mul(u, v);
                    if span.insert(p.clone()) {
                        new.push(p);
                    }
                }
            }
        }
        levels.push(new);
    }
    Some(k)
}

fn congruent(f: &QMatrix, p: &QMatrix) -> QMatrix {
    p.transpose().mul(f).unwrap().mul(p).unwrap()
}

fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> QMatrix {
    loop {
        let rows: Vec<Vec<Rational>> =
            (0..n).map(|_| (0..n).map(|_| Rational::from_int(rng.gen_range(-3..=3))).collect()).collect();
        let p = QMatrix::from_rows(rows);
        if axialforge::linalg::rank(&p) == n {
            return p;
        }
    }
}

/// The signature is unchanged by `count` random congruences.
pub fn signature_is_congruence_invariant(f: &QMatrix, count: usize, seed: u64) -> Result<(), String> {
    let want = sym_signature(f).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..count {
        let p = random_invertible(f.nrows(), &mut rng);
        let got = sym_signature(&congruent(f, &p)).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("congruence {k}: {got:?} vs {want:?}"));
        }
    }
    Ok(())
}

/// Stops after one expansion, saves, reloads and finishes; the result must
/// equal an uninterrupted run.
pub fn checkpoint_resume_matches(c: &Case) -> Result<(), String> {
    let budget = Budget::default();
    let whole = construct(&c.shape, &budget);
    let short = construct(&c.shape, &Budget { max_expansions: 1, ..budget });
    if short.verdict != Verdict::Incomplete {
        return Err(format!("{}: finished within one expansion", c.id));
    }
    let bytes = checkpoint_save(&c.shape, &short.state);
    let cp = checkpoint_load(&bytes).map_err(|e| e.to_string())?;
    if cp.state != short.state {
        return Err("reloaded state differs".into());
    }
    if checkpoint_save(&c.shape, &cp.state) != bytes {
        return Err("saving the reloaded state changes the bytes".into());
    }
    let resumed = resume(&c.shape, cp, &budget).map_err(|e| e.to_string())?;
    if resumed.verdict != whole.verdict || resumed.algebra != whole.algebra || resumed.axes != whole.axes {
        return Err(format!("{}: resumed run differs", c.id));
    }
    Ok(())
}
