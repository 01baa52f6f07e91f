use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::field::Field;
use super::matrix::Matrix;
use super::sparse::SparseMatrix;
use crate::{Error, Result};

/// Bounded cochain complex `C^lo → … → C^hi`, differentials raising degree.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainComplex<F> {
    lo: i32,
    dims: Vec<usize>,
    d: Vec<SparseMatrix<F>>,
}

/// Cohomology in one degree.
#[derive(Debug, Clone)]
pub struct Cohomology<F> {
    pub dim: usize,
    /// Cocycles whose classes form a basis.
    pub representatives: Matrix<F>,
}

impl<F: Field> ChainComplex<F> {
    /// `d[k]` maps degree `lo + k` to `lo + k + 1`. Shapes and `d² = 0` are
    /// checked.
    pub fn new(lo: i32, dims: Vec<usize>, d: Vec<SparseMatrix<F>>) -> Result<Self> {
        if dims.is_empty() {
            return Ok(ChainComplex { lo, dims: vec![0], d: Vec::new() });
        }
        if d.len() != dims.len() - 1 {
            return Err(Error::Shape(format!("{} differentials for {} degrees", d.len(), dims.len())));
        }
        for (k, m) in d.iter().enumerate() {
            if (m.rows(), m.cols()) != (dims[k + 1], dims[k]) {
                return Err(Error::Shape(format!(
                    "d in degree {} is {}x{}, expected {}x{}",
                    lo + k as i32,
                    m.rows(),
                    m.cols(),
                    dims[k + 1],
                    dims[k]
                )));
            }
        }
        for k in 1..d.len() {
            if !d[k].mul(&d[k - 1])?.is_zero() {
                return Err(Error::NotComplex(lo + k as i32 - 1));
            }
        }
        Ok(ChainComplex { lo, dims, d })
    }

    /// `V` placed in degree `k` with zero differential.
    pub fn concentrated(k: i32, dim: usize) -> Self {
        ChainComplex { lo: k, dims: vec![dim], d: Vec::new() }
    }

    pub fn zero() -> Self {
        Self::concentrated(0, 0)
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn dim(&self, k: i32) -> usize {
        if k < self.lo || k > self.hi() {
            0
        } else {
            self.dims[(k - self.lo) as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `d: C^k → C^{k+1}`, zero outside the stored range.
    pub fn diff(&self, k: i32) -> SparseMatrix<F> {
        if k >= self.lo && k < self.hi() {
            self.d[(k - self.lo) as usize].clone()
        } else {
            SparseMatrix::zeros(self.dim(k + 1), self.dim(k))
        }
    }

    fn diff_rank(&self, k: i32) -> usize {
        if k >= self.lo && k < self.hi() {
            self.d[(k - self.lo) as usize].rank()
        } else {
            0
        }
    }

    fn check_degree(&self, k: i32) -> Result<()> {
        if k < self.lo || k > self.hi() {
            return Err(Error::DegreeRange { degree: k, lo: self.lo, hi: self.hi() });
        }
        Ok(())
    }

    /// `dim ker d_k − rank d_{k−1}`, by ranks only.
    pub fn cohomology_dim(&self, k: i32) -> Result<usize> {
        self.check_degree(k)?;
        Ok(self.dim(k) - self.diff_rank(k) - self.diff_rank(k - 1))
    }

    pub fn cohomology(&self, k: i32) -> Result<Cohomology<F>> {
        self.check_degree(k)?;
        let z = self.diff(k).to_dense().kernel();
        let b = self.diff(k - 1).to_dense().column_basis();
        let aug = b.hstack(&z)?;
        let (_, pivots) = aug.rref();
        let reps: Vec<usize> = pivots.iter().filter(|&&p| p >= b.cols()).map(|p| p - b.cols()).collect();
        Ok(Cohomology { dim: reps.len(), representatives: z.select_columns(&reps) })
    }

    /// `(k, dim H^k)` over the whole range.
    pub fn betti(&self) -> Vec<(i32, usize)> {
        (self.lo..=self.hi()).map(|k| (k, self.cohomology_dim(k).unwrap())).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti().iter().all(|&(_, b)| b == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &n)| if (self.lo + k as i32) % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Same complex on the degree range `[lo, hi]`, padding with zeros.
    pub fn widen(&self, lo: i32, hi: i32) -> Self {
        let lo = lo.min(self.lo);
        let hi = hi.max(self.hi());
        let dims = (lo..=hi).map(|k| self.dim(k)).collect();
        let d = (lo..hi).map(|k| self.diff(k)).collect();
        ChainComplex { lo, dims, d }
    }

    /// `C[n]^k = C^{k+n}` with differential `(−1)^n d`.
    pub fn shift(&self, n: i32) -> Self {
        let d = if n % 2 == 0 { self.d.clone() } else { self.d.iter().map(SparseMatrix::neg).collect() };
        ChainComplex { lo: self.lo - n, dims: self.dims.clone(), d }
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let lo = self.lo.min(o.lo);
        let hi = self.hi().max(o.hi());
        let dims = (lo..=hi).map(|k| self.dim(k) + o.dim(k)).collect();
        let d = (lo..hi)
            .map(|k| {
                SparseMatrix::blocks(
                    &[self.dim(k + 1), o.dim(k + 1)],
                    &[self.dim(k), o.dim(k)],
                    &[vec![Some(&self.diff(k)), None], vec![None, Some(&o.diff(k))]],
                )
                .unwrap()
            })
            .collect();
        ChainComplex { lo, dims, d }
    }

    /// Debug dump: degree range, dims and sparse triples per differential.
    pub fn to_json(&self) -> Value {
        let diffs: Vec<Value> = self
            .d
            .iter()
            .enumerate()
            .map(|(k, m)| {
                json!({
                    "from": self.lo + k as i32,
                    "entries": m.triplets().map(|(i, j, v)| json!([i, j, v.render()])).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "lo": self.lo, "hi": self.hi(), "dims": self.dims, "differentials": diffs })
    }
}

/// Degreewise maps `f^k: C^k → D^k` commuting with differentials.
#[derive(Debug, Clone)]
pub struct ChainMap<F> {
    pub source: ChainComplex<F>,
    pub target: ChainComplex<F>,
    maps: BTreeMap<i32, SparseMatrix<F>>,
}

impl<F: Field> ChainMap<F> {
    pub fn new(source: ChainComplex<F>, target: ChainComplex<F>, maps: BTreeMap<i32, SparseMatrix<F>>) -> Result<Self> {
        for (&k, m) in &maps {
            if (m.rows(), m.cols()) != (target.dim(k), source.dim(k)) {
                return Err(Error::Shape(format!(
                    "chain map in degree {k} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(k),
                    source.dim(k)
                )));
            }
        }
        let f = ChainMap { source, target, maps };
        let lo = f.source.lo().min(f.target.lo()) - 1;
        let hi = f.source.hi().max(f.target.hi());
        for k in lo..=hi {
            let left = f.at(k + 1).mul(&f.source.diff(k))?;
            let right = f.target.diff(k).mul(&f.at(k))?;
            if left != right {
                return Err(Error::NotChainMap(k));
            }
        }
        Ok(f)
    }

    pub fn identity(c: &ChainComplex<F>) -> Self {
        let maps = (c.lo()..=c.hi()).map(|k| (k, SparseMatrix::identity(c.dim(k)))).collect();
        ChainMap { source: c.clone(), target: c.clone(), maps }
    }

    pub fn scalar(c: &ChainComplex<F>, s: F) -> Self {
        let maps = (c.lo()..=c.hi()).map(|k| (k, SparseMatrix::scalar(c.dim(k), s.clone()))).collect();
        ChainMap { source: c.clone(), target: c.clone(), maps }
    }

    pub fn at(&self, k: i32) -> SparseMatrix<F> {
        self.maps.get(&k).cloned().unwrap_or_else(|| SparseMatrix::zeros(self.target.dim(k), self.source.dim(k)))
    }
}

/// `cone(f)^k = C^{k+1} ⊕ D^k` with `d(c, x) = (−d c, f(c) + d x)`.
pub fn cone<F: Field>(f: &ChainMap<F>) -> ChainComplex<F> {
    let (c, dd) = (&f.source, &f.target);
    let lo = (c.lo() - 1).min(dd.lo());
    let hi = (c.hi() - 1).max(dd.hi());
    let dims: Vec<usize> = (lo..=hi).map(|k| c.dim(k + 1) + dd.dim(k)).collect();
    let d = (lo..hi)
        .map(|k| {
            let dc = c.diff(k + 1).neg();
            let fk = f.at(k + 1);
            let ddk = dd.diff(k);
            SparseMatrix::blocks(
                &[c.dim(k + 2), dd.dim(k + 1)],
                &[c.dim(k + 1), dd.dim(k)],
                &[vec![Some(&dc), None], vec![Some(&fk), Some(&ddk)]],
            )
            .unwrap()
        })
        .collect();
    ChainComplex::new(lo, dims, d).expect("cone of a chain map is a complex")
}

/// Double complex: vertical complexes in columns `c_lo, c_lo + 1, …` and
/// horizontal chain maps between consecutive columns.
#[derive(Debug, Clone)]
pub struct Bicomplex<F> {
    pub c_lo: i32,
    pub columns: Vec<ChainComplex<F>>,
    /// `horizontals[c]` maps column `c` to column `c + 1`.
    pub horizontals: Vec<ChainMap<F>>,
}

impl<F: Field> Bicomplex<F> {
    pub fn new(c_lo: i32, columns: Vec<ChainComplex<F>>, horizontals: Vec<ChainMap<F>>) -> Result<Self> {
        if columns.is_empty() || horizontals.len() + 1 != columns.len() {
            return Err(Error::Shape(format!(
                "{} columns need {} horizontal maps, got {}",
                columns.len(),
                columns.len().saturating_sub(1),
                horizontals.len()
            )));
        }
        for (c, h) in horizontals.iter().enumerate() {
            if h.source != columns[c] || h.target != columns[c + 1] {
                return Err(Error::Shape(format!("horizontal map {c} does not join its columns")));
            }
        }
        for c in 1..horizontals.len() {
            let (h0, h1) = (&horizontals[c - 1], &horizontals[c]);
            for q in h0.source.lo()..=h0.source.hi() {
                if !h1.at(q).mul(&h0.at(q))?.is_zero() {
                    return Err(Error::NotComplex(c_lo + c as i32 - 1 + q));
                }
            }
        }
        Ok(Bicomplex { c_lo, columns, horizontals })
    }

    /// Total complex with `d = h + (−1)^c v` on column `c`.
    pub fn total(&self) -> Result<ChainComplex<F>> {
        let cols: Vec<(i32, &ChainComplex<F>)> =
            self.columns.iter().enumerate().map(|(i, col)| (self.c_lo + i as i32, col)).collect();
        let lo = cols.iter().map(|(c, col)| c + col.lo()).min().unwrap();
        let hi = cols.iter().map(|(c, col)| c + col.hi()).max().unwrap();
        let sizes = |n: i32| -> Vec<usize> { cols.iter().map(|(c, col)| col.dim(n - c)).collect() };
        let dims: Vec<usize> = (lo..=hi).map(|n| sizes(n).iter().sum()).collect();
        let mut d = Vec::new();
        for n in lo..hi {
            let (src, tgt) = (sizes(n), sizes(n + 1));
            let mut grid: Vec<Vec<Option<SparseMatrix<F>>>> = vec![vec![None; src.len()]; tgt.len()];
            for (i, (c, col)) in cols.iter().enumerate() {
                let q = n - c;
                let v = col.diff(q);
                grid[i][i] = Some(if c.rem_euclid(2) == 1 { v.neg() } else { v });
                if i + 1 < cols.len() {
                    grid[i + 1][i] = Some(self.horizontals[i].at(q));
                }
            }
            let refs: Vec<Vec<Option<&SparseMatrix<F>>>> =
                grid.iter().map(|row| row.iter().map(Option::as_ref).collect()).collect();
            d.push(SparseMatrix::blocks(&tgt, &src, &refs)?);
        }
        ChainComplex::new(lo, dims, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    type C = ChainComplex<Rational>;

    fn sm(rows: &[&[i64]]) -> SparseMatrix<Rational> {
        SparseMatrix::from_dense(&Matrix::from_ints(rows))
    }

    #[test]
    fn cohomology_examples() {
        let c = C::new(0, vec![1, 1], vec![sm(&[&[1]])]).unwrap();
        assert!(c.is_acyclic());
        let z = C::new(0, vec![2, 3], vec![SparseMatrix::zeros(3, 2)]).unwrap();
        assert_eq!(z.betti(), vec![(0, 2), (1, 3)]);
        let t = C::new(0, vec![2, 1], vec![sm(&[&[1, 0]])]).unwrap();
        assert_eq!(t.betti(), vec![(0, 1), (1, 0)]);
        let h = t.cohomology(0).unwrap();
        assert_eq!(h.representatives.column(0)[0], Rational::from_integer(0.into()));
        assert!(matches!(t.cohomology(5), Err(Error::DegreeRange { .. })));
        assert!(C::new(0, vec![1, 1, 1], vec![sm(&[&[1]]), sm(&[&[1]])]).is_err());
    }

    #[test]
    fn cones() {
        let c = C::new(0, vec![1, 2], vec![sm(&[&[1], &[0]])]).unwrap();
        assert!(cone(&ChainMap::identity(&c)).is_acyclic());
        let two = ChainMap::scalar(&C::concentrated(0, 1), Rational::from_integer(2.into()));
        assert!(cone(&two).is_acyclic());
        let to_zero = ChainMap::new(c.clone(), C::zero(), BTreeMap::new()).unwrap();
        let k = cone(&to_zero);
        assert_eq!(k.cohomology_dim(-1).unwrap(), c.cohomology_dim(0).unwrap());
        assert_eq!(k.cohomology_dim(0).unwrap(), c.cohomology_dim(1).unwrap());
        let bad = ChainMap::new(c.clone(), c.clone(), [(0, SparseMatrix::identity(1))].into());
        assert!(matches!(bad, Err(Error::NotChainMap(0))));
    }

    #[test]
    fn totals() {
        let col = C::new(0, vec![1, 1], vec![sm(&[&[1]])]);
        let col = col.unwrap();
        let b = Bicomplex::new(0, vec![col.clone()], vec![]).unwrap();
        assert_eq!(b.total().unwrap(), col);
        let x = C::concentrated(0, 2);
        let b = Bicomplex::new(0, vec![x.clone(), x.clone()], vec![ChainMap::identity(&x)]).unwrap();
        assert!(b.total().unwrap().is_acyclic());
    }
}
