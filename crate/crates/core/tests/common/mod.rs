#![allow(dead_code)]

use std::collections::BTreeMap;

use ncbeil::linalg::{ChainMap, SemilinearInvolution};
use ncbeil::{ChainComplex, Field, Matrix, Rational, SparseMatrix};
use rand::Rng;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Small integer entries, about a third of them zero.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix<Rational> {
    let entries: Vec<Rational> =
        (0..rows * cols).map(|_| if rng.gen_bool(0.35) { rat(0) } else { rat(rng.gen_range(-3..=3)) }).collect();
    Matrix::from_fn(rows, cols, |i, j| entries[i * cols + j].clone())
}

/// Rank-deficient on purpose now and then: some rows repeat sums of others.
pub fn random_degenerate_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix<Rational> {
    let mut m = random_matrix(rng, rows, cols);
    if rows >= 3 && rng.gen_bool(0.5) {
        let (a, b, t) = (rng.gen_range(0..rows), rng.gen_range(0..rows), rng.gen_range(0..rows));
        let c = rat(rng.gen_range(-2..=2));
        for j in 0..cols {
            let v = m.get(a, j) + &c * m.get(b, j);
            m.set(t, j, v);
        }
    }
    m
}

/// A cochain complex whose differential `d_k` is a random combination of the
/// rows annihilating `im d_{k−1}`.
pub fn random_complex(rng: &mut impl Rng, lo: i32, dims: &[usize]) -> ChainComplex<Rational> {
    let mut d: Vec<SparseMatrix<Rational>> = Vec::new();
    for k in 0..dims.len().saturating_sub(1) {
        let m = if k == 0 {
            random_matrix(rng, dims[1], dims[0])
        } else {
            let prev = d[k - 1].to_dense();
            let ann = prev.transpose().kernel().transpose();
            if ann.rows() == 0 {
                Matrix::zeros(dims[k + 1], dims[k])
            } else {
                random_matrix(rng, dims[k + 1], ann.rows()).mul(&ann).unwrap()
            }
        };
        d.push(SparseMatrix::from_dense(&m));
    }
    ChainComplex::new(lo, dims.to_vec(), d).expect("construction gives d² = 0")
}

pub fn random_dims(rng: &mut impl Rng, len: usize, max: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..=max)).collect()
}

/// `P diag(±1) P⁻¹` with `P` a product of random unitriangular matrices;
/// returns the matrix and the number of `+1` entries.
pub fn random_involution(rng: &mut impl Rng, n: usize) -> (Matrix<Rational>, usize) {
    let plus = rng.gen_range(0..=n);
    let a: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-2..=2)).collect();
    let b: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-2..=2)).collect();
    let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => rat(1),
        std::cmp::Ordering::Greater => rat(a[i * n + j]),
        std::cmp::Ordering::Less => rat(0),
    });
    let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => rat(1),
        std::cmp::Ordering::Less => rat(b[i * n + j]),
        std::cmp::Ordering::Greater => rat(0),
    });
    let p = lower.mul(&upper).unwrap();
    let d = Matrix::from_fn(n, n, |i, j| {
        if i != j {
            rat(0)
        } else if i < plus {
            rat(1)
        } else {
            rat(-1)
        }
    });
    let m = p.mul(&d).unwrap().mul(&p.inverse().unwrap()).unwrap();
    (m, plus)
}

/// Zero-differential complex in degrees `0..dims.len()` with a random
/// involution per degree; also returns the expected `+1` dims.
pub fn random_involution_complex(
    rng: &mut impl Rng,
    dims: &[usize],
) -> (ChainComplex<Rational>, SemilinearInvolution<Rational>, Vec<usize>) {
    let d = (1..dims.len()).map(|k| SparseMatrix::zeros(dims[k], dims[k - 1])).collect();
    let c = ChainComplex::new(0, dims.to_vec(), d).unwrap();
    let (mats, plus): (Vec<_>, Vec<_>) = dims.iter().map(|&n| random_involution(rng, n)).unzip();
    let iota = SemilinearInvolution::new(&c, mats, false).unwrap();
    (c, iota, plus)
}

pub fn identity_map(c: &ChainComplex<Rational>) -> ChainMap<Rational> {
    ChainMap::identity(c)
}

/// Multiplication by a nonzero scalar, which is an isomorphism.
pub fn scalar_map(c: &ChainComplex<Rational>, s: i64) -> ChainMap<Rational> {
    let maps: BTreeMap<i32, SparseMatrix<Rational>> =
        (c.lo()..=c.hi()).map(|k| (k, SparseMatrix::scalar(c.dim(k), Rational::from_i64(s)))).collect();
    ChainMap::new(c.clone(), c.clone(), maps).unwrap()
}

pub fn squares_to_zero(c: &ChainComplex<Rational>) -> bool {
    (c.lo()..c.hi()).all(|k| c.diff(k + 1).mul(&c.diff(k)).unwrap().is_zero())
}
