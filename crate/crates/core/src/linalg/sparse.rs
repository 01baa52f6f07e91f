use std::collections::HashMap;

use super::field::Field;
use super::matrix::Matrix;
use crate::{Error, Result};

/// Column-compressed sparse matrix; each column is sorted by row.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, F)>>,
}

/// Below this fraction of nonzero entries elimination stays sparse.
pub const DENSITY_THRESHOLD: f64 = 0.25;

type SparseVec<F> = Vec<(usize, F)>;

fn axpy<F: Field>(v: &[(usize, F)], c: &F, w: &[(usize, F)]) -> SparseVec<F> {
    // v - c·w
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut a, mut b) = (0, 0);
    while a < v.len() || b < w.len() {
        let ra = v.get(a).map_or(usize::MAX, |x| x.0);
        let rb = w.get(b).map_or(usize::MAX, |x| x.0);
        if ra < rb {
            out.push(v[a].clone());
            a += 1;
        } else if rb < ra {
            out.push((rb, w[b].1.mul(c).neg()));
            b += 1;
        } else {
            let x = v[a].1.sub(&w[b].1.mul(c));
            if !x.is_zero() {
                out.push((ra, x));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, F::one())
    }

    pub fn scalar(n: usize, c: F) -> Self {
        if c.is_zero() {
            return Self::zeros(n, n);
        }
        SparseMatrix { rows: n, cols: n, columns: (0..n).map(|i| vec![(i, c.clone())]).collect() }
    }

    /// Builds from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, trip: impl IntoIterator<Item = (usize, usize, F)>) -> Self {
        let mut acc: Vec<std::collections::BTreeMap<usize, F>> = vec![Default::default(); cols];
        for (i, j, v) in trip {
            assert!(i < rows && j < cols, "triplet ({i}, {j}) outside {rows}x{cols}");
            let e = acc[j].entry(i).or_insert_with(F::zero);
            *e = e.add(&v);
        }
        let columns = acc.into_iter().map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn from_dense(m: &Matrix<F>) -> Self {
        let columns = (0..m.cols())
            .map(|j| (0..m.rows()).filter(|&i| !m.get(i, j).is_zero()).map(|i| (i, m.get(i, j).clone())).collect())
            .collect();
        SparseMatrix { rows: m.rows(), cols: m.cols(), columns }
    }

    pub fn to_dense(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, F)] {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn density(&self) -> f64 {
        let cells = self.rows * self.cols;
        if cells == 0 {
            0.0
        } else {
            self.nnz() as f64 / cells as f64
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.columns[j].binary_search_by_key(&i, |e| e.0).map_or_else(|_| F::zero(), |k| self.columns[j][k].1.clone())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.columns.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        let columns = self
            .columns
            .iter()
            .map(|c| {
                c.iter()
                    .filter_map(|(i, v)| {
                        let w = f(v);
                        (!w.is_zero()).then_some((*i, w))
                    })
                    .collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn neg(&self) -> Self {
        self.map(F::neg)
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn conj(&self) -> Self {
        self.map(F::conj)
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(i, j, v)| (j, i, v.clone())))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::Shape(format!("{}x{} + {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let columns = self.columns.iter().zip(&o.columns).map(|(a, b)| axpy(a, &F::one().neg(), b)).collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, columns })
    }

    /// `self · o`
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let columns = o
            .columns
            .iter()
            .map(|oc| {
                let mut acc: HashMap<usize, F> = HashMap::new();
                for (k, b) in oc {
                    for (i, a) in &self.columns[*k] {
                        let e = acc.entry(*i).or_insert_with(F::zero);
                        *e = e.add(&a.mul(b));
                    }
                }
                let mut col: Vec<(usize, F)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                col.sort_by_key(|e| e.0);
                col
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: o.cols, columns })
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, a) in c {
                out[*i] = out[*i].add(&a.mul(&v[j]));
            }
        }
        out
    }

    pub fn hstack(&self, o: &Self) -> Result<Self> {
        if self.rows != o.rows {
            return Err(Error::Shape(format!("hstack rows {} vs {}", self.rows, o.rows)));
        }
        let mut columns = self.columns.clone();
        columns.extend(o.columns.iter().cloned());
        Ok(SparseMatrix { rows: self.rows, cols: self.cols + o.cols, columns })
    }

    pub fn vstack(&self, o: &Self) -> Result<Self> {
        if self.cols != o.cols {
            return Err(Error::Shape(format!("vstack cols {} vs {}", self.cols, o.cols)));
        }
        let columns = self
            .columns
            .iter()
            .zip(&o.columns)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.extend(b.iter().map(|(i, v)| (i + self.rows, v.clone())));
                c
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows + o.rows, cols: self.cols, columns })
    }

    /// Assembles a block matrix; `None` blocks are zero. Block shapes are
    /// given by `row_sizes` and `col_sizes`.
    pub fn blocks(row_sizes: &[usize], col_sizes: &[usize], blocks: &[Vec<Option<&Self>>]) -> Result<Self> {
        let rows = row_sizes.iter().sum();
        let cols = col_sizes.iter().sum();
        let mut trip = Vec::new();
        let mut r0 = 0;
        for (bi, &rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &cs) in col_sizes.iter().enumerate() {
                if let Some(b) = blocks[bi][bj] {
                    if (b.rows, b.cols) != (rs, cs) {
                        return Err(Error::Shape(format!(
                            "block ({bi}, {bj}) is {}x{}, expected {rs}x{cs}",
                            b.rows, b.cols
                        )));
                    }
                    trip.extend(b.triplets().map(|(i, j, v)| (r0 + i, c0 + j, v.clone())));
                }
                c0 += cs;
            }
            r0 += rs;
        }
        Ok(Self::from_triplets(rows, cols, trip))
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        SparseMatrix {
            rows: self.rows,
            cols: idx.len(),
            columns: idx.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    /// Column groups whose row supports never meet, with their row sets.
    fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut uf = UnionFind((0..self.rows + self.cols).collect());
        for (j, c) in self.columns.iter().enumerate() {
            for (i, _) in c {
                uf.union(self.rows + j, *i);
            }
        }
        let mut groups: HashMap<usize, (Vec<usize>, Vec<usize>)> = HashMap::new();
        for j in 0..self.cols {
            if self.columns[j].is_empty() {
                continue;
            }
            let r = uf.find(self.rows + j);
            groups.entry(r).or_default().1.push(j);
        }
        for i in 0..self.rows {
            let r = uf.find(i);
            if let Some(g) = groups.get_mut(&r) {
                g.0.push(i);
            }
        }
        let mut out: Vec<_> = groups.into_values().collect();
        out.sort_by_key(|g| g.1[0]);
        out
    }

    /// Exact rank. The matrix is split into independent blocks first; each
    /// block is eliminated densely if it is small or dense enough, and by
    /// sparse column reduction otherwise.
    pub fn rank(&self) -> usize {
        self.components()
            .into_iter()
            .map(|(rows, cols)| {
                let dense_cells = rows.len() * cols.len();
                let nnz: usize = cols.iter().map(|&j| self.columns[j].len()).sum();
                if dense_cells <= 64 * 64 || nnz as f64 >= DENSITY_THRESHOLD * dense_cells as f64 {
                    let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(a, &b)| (b, a)).collect();
                    let mut m = Matrix::zeros(rows.len(), cols.len());
                    for (jj, &j) in cols.iter().enumerate() {
                        for (i, v) in &self.columns[j] {
                            m.set(pos[i], jj, v.clone());
                        }
                    }
                    m.rank()
                } else {
                    let mut order = cols;
                    order.sort_by_key(|&j| self.columns[j].len());
                    sparse_rank(order.iter().map(|&j| self.columns[j].clone()))
                }
            })
            .sum()
    }

    /// Ranks of the leading column prefixes `0..breaks[t]` for each `t`, from a
    /// single elimination pass per independent block. `breaks` must be sorted.
    pub fn prefix_ranks(&self, breaks: &[usize]) -> Vec<usize> {
        debug_assert!(breaks.windows(2).all(|w| w[0] <= w[1]));
        let segment = |j: usize| breaks.partition_point(|&b| b <= j);
        let mut gained = vec![0usize; breaks.len() + 1];
        for (_, cols) in self.components() {
            let mut order = cols;
            order.sort_by_key(|&j| (segment(j), self.columns[j].len()));
            let mut red = Reducer::new();
            for j in order {
                if red.insert(self.columns[j].clone()) {
                    gained[segment(j)] += 1;
                }
            }
        }
        let mut acc = 0;
        breaks
            .iter()
            .enumerate()
            .map(|(t, _)| {
                acc += gained[t];
                acc
            })
            .collect()
    }
}

/// Incremental column reduction against a pivot table keyed by leading row.
struct Reducer<F> {
    pivots: HashMap<usize, SparseVec<F>>,
}

impl<F: Field> Reducer<F> {
    fn new() -> Self {
        Reducer { pivots: HashMap::new() }
    }

    /// Reduces `v`; returns whether it was independent of earlier columns.
    fn insert(&mut self, mut v: SparseVec<F>) -> bool {
        while let Some((r, c)) = v.first().cloned() {
            match self.pivots.get(&r) {
                Some(p) => v = axpy(&v, &c, p),
                None => {
                    let inv = c.inv().expect("nonzero leading entry");
                    let norm = v.iter().map(|(i, x)| (*i, x.mul(&inv))).collect();
                    self.pivots.insert(r, norm);
                    return true;
                }
            }
        }
        false
    }
}

pub fn sparse_rank<F: Field>(cols: impl Iterator<Item = SparseVec<F>>) -> usize {
    let mut red = Reducer::new();
    for v in cols {
        red.insert(v);
    }
    red.pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    #[test]
    fn rank_paths_agree() {
        // block diagonal of a 70x70 sparse bidiagonal and a 2x2 singular block
        let mut trip = Vec::new();
        for i in 0..70 {
            trip.push((i, i, Rational::from_integer(1.into())));
            if i + 1 < 70 {
                trip.push((i + 1, i, Rational::from_integer((-1).into())));
            }
        }
        trip.push((70, 70, Rational::from_integer(2.into())));
        trip.push((70, 71, Rational::from_integer(4.into())));
        let m = SparseMatrix::from_triplets(71, 72, trip);
        assert_eq!(m.rank(), 71);
        assert_eq!(m.to_dense().rank(), 71);
        assert_eq!(m.prefix_ranks(&[0, 35, 70, 71, 72]), vec![0, 35, 70, 71, 71]);
        let t = m.transpose();
        assert_eq!(t.rank(), 71);
        assert_eq!(t.transpose(), m);
    }

    #[test]
    fn products() {
        let a = SparseMatrix::<Rational>::from_dense(&Matrix::from_ints(&[&[1, 2], &[0, 1]]));
        let b = a.mul(&a).unwrap();
        assert_eq!(b.to_dense(), Matrix::from_ints(&[&[1, 4], &[0, 1]]));
        assert!(a.add(&a.neg()).unwrap().is_zero());
    }
}
