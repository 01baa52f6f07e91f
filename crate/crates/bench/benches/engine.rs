use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use ncbeil::cyclic::{cyclic_tables, MixedComplex};
use ncbeil::fdalgebra::{factor_data, parse_preset, preset};
use ncbeil::hodge::{deligne_dims, spec_field};
use ncbeil::linalg::bareiss_rank;
use ncbeil::verify::{verify_algebra, MiddlePath, VerifyOptions};
use ncbeil::{Matrix, Rational, SparseMatrix};

fn algebra(name: &str) -> ncbeil::FdAlgebra {
    preset(&parse_preset(name).unwrap()).unwrap()
}

fn test_matrix(n: usize) -> Matrix<Rational> {
    // deterministic, dense, rank-deficient by one
    let mut m = Matrix::from_fn(n, n, |i, j| Rational::from_integer((((i * 7 + j * 13) % 11) as i64 - 5).into()));
    for j in 0..n {
        let v = m.get(0, j) + m.get(1, j);
        m.set(n - 1, j, v);
    }
    m
}

fn linalg(c: &mut Criterion) {
    let m = test_matrix(24);
    c.bench_function("bareiss rank 24x24", |b| b.iter(|| bareiss_rank(black_box(&m))));
    c.bench_function("gaussian rank 24x24", |b| b.iter(|| black_box(&m).rank()));
    let mc = MixedComplex::new(&algebra("upper_triangular:2"), 6).unwrap();
    let d: &SparseMatrix<Rational> = mc.b(6);
    c.bench_function("sparse rank b_6 of T2", |b| b.iter(|| black_box(d).rank()));
}

fn cyclic(c: &mut Criterion) {
    let t2 = algebra("upper_triangular:2");
    c.bench_function("cyclic tables T2 N=6", |b| b.iter(|| cyclic_tables(black_box(&t2), 6, 4).unwrap()));
    let m2 = algebra("full_matrix:2");
    c.bench_function("cyclic tables M2 N=4", |b| b.iter(|| cyclic_tables(black_box(&m2), 4, 3).unwrap()));
}

fn hodge(c: &mut Criterion) {
    let v = spec_field(2, 1).unwrap();
    c.bench_function("deligne dims spec_field(2,1)", |b| {
        b.iter(|| {
            for j in -2..=4 {
                black_box(deligne_dims(black_box(&v), j, -1..=2).unwrap());
            }
        })
    });
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for name in ["rational", "number_field:x^3-2", "dual_numbers"] {
        let a = algebra(name);
        let opts = VerifyOptions { path: MiddlePath::Reduced, ..Default::default() };
        group.bench_function(name, |b| b.iter(|| verify_algebra(black_box(&a), &opts).unwrap()));
    }
    let s3 = algebra("group_algebra:S3");
    group.bench_function("factor_data S3", |b| b.iter(|| factor_data(black_box(&s3), 0).unwrap()));
    group.finish();
}

criterion_group!(benches, linalg, cyclic, hodge, pipeline);
criterion_main!(benches);
