use criterion::{criterion_group, criterion_main, Criterion};

use axialforge::analysis::analyze;
use axialforge::cases::{resolve, CaseId};
use axialforge::config::catalog_axets;
use axialforge::engine::{construct, Budget};
use axialforge::linalg::{sym_signature, QMatrix};

fn bench_construct(c: &mut Criterion) {
    let budget = Budget::default();
    for id in ["1/1+1+1/(2B)^3", "S3/1+3/3A 2A", "D10/1+5/5A 2B", "S4/6/3A 2B"] {
        let case = resolve(&id.parse::<CaseId>().unwrap()).unwrap();
        c.bench_function(&format!("construct {id}"), |b| b.iter(|| construct(&case.shape, &budget)));
    }
}

fn bench_analyze(c: &mut Criterion) {
    let case = resolve(&"S3/1+3+3/6A 2A 2B".parse::<CaseId>().unwrap()).unwrap();
    let built = construct(&case.shape, &Budget::default());
    let alg = built.algebra.expect("completes");
    c.bench_function("analyze S3/1+3+3/6A 2A 2B", |b| b.iter(|| analyze(&alg, &built.axes, &case.shape)));
}

fn bench_enumerate(c: &mut Criterion) {
    c.bench_function("enumerate S4", |b| b.iter(|| catalog_axets(Some("S4")).unwrap()));
}

fn bench_signature(c: &mut Criterion) {
    let n = 24;
    let m = QMatrix::from_rows(
        (0..n).map(|i| (0..n).map(|j| axialforge::linalg::q(1, (i + j + 1) as i64)).collect()).collect(),
    );
    c.bench_function("signature of 24x24 Hilbert matrix", |b| b.iter(|| sym_signature(&m).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_construct, bench_analyze, bench_enumerate, bench_signature
}
criterion_main!(benches);
