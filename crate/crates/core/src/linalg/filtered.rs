use super::complex::ChainComplex;
use super::field::Field;
use super::matrix::Matrix;
use super::sparse::SparseMatrix;
use crate::{Error, Result};

/// Column echelon basis of the column span: canonical for a subspace.
pub fn canonical_span<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let (r, pivots) = m.transpose().rref();
    r.select_rows(&(0..pivots.len()).collect::<Vec<_>>()).transpose()
}

/// Decreasing filtration `F^p` on a cochain complex, given per degree by
/// spanning matrices for `p_min ≤ p ≤ p_max`. Below `p_min` it is the whole
/// space, above `p_max` it is zero.
#[derive(Debug, Clone)]
pub struct FilteredComplex<F> {
    complex: ChainComplex<F>,
    p_min: i32,
    p_max: i32,
    spans: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> FilteredComplex<F> {
    /// `spans[k − lo][p − p_min]` spans `F^p C^k`. Checks fullness at
    /// `p_min`, nesting and compatibility with `d`.
    pub fn new(complex: ChainComplex<F>, p_min: i32, spans: Vec<Vec<Matrix<F>>>) -> Result<Self> {
        let nd = (complex.hi() - complex.lo() + 1) as usize;
        if spans.len() != nd {
            return Err(Error::Filtration(format!("{} degrees of spans for {nd} degrees", spans.len())));
        }
        let len = spans.iter().map(Vec::len).max().unwrap_or(0);
        if len == 0 || spans.iter().any(|s| s.len() != len) {
            return Err(Error::Filtration("every degree needs the same number of steps".into()));
        }
        let spans: Vec<Vec<Matrix<F>>> = spans.iter().map(|s| s.iter().map(canonical_span).collect()).collect();
        let fc = FilteredComplex { p_max: p_min + len as i32 - 1, p_min, complex, spans };
        fc.validate()?;
        Ok(fc)
    }

    /// `F^p` full for `p ≤ jump`, zero above.
    pub fn trivial(complex: ChainComplex<F>, jump: i32) -> Self {
        let spans = (complex.lo()..=complex.hi()).map(|k| vec![Matrix::identity(complex.dim(k))]).collect();
        FilteredComplex { complex, p_min: jump, p_max: jump, spans }
    }

    /// `F^p = ⊕_{k ≥ p} C^k`.
    pub fn stupid(complex: ChainComplex<F>) -> Self {
        let (lo, hi) = (complex.lo(), complex.hi());
        let spans = (lo..=hi)
            .map(|k| {
                (lo..=hi)
                    .map(|p| if k >= p { Matrix::identity(complex.dim(k)) } else { Matrix::zeros(complex.dim(k), 0) })
                    .collect()
            })
            .collect();
        FilteredComplex { complex, p_min: lo, p_max: hi, spans }
    }

    fn validate(&self) -> Result<()> {
        let c = &self.complex;
        for k in c.lo()..=c.hi() {
            if self.fil(k, self.p_min).rank() != c.dim(k) {
                return Err(Error::Filtration(format!("F^{} is not everything in degree {k}", self.p_min)));
            }
            for p in self.p_min..=self.p_max {
                let (big, small) = (self.fil(k, p), self.fil(k, p + 1));
                if !big.spans(&small) {
                    return Err(Error::Filtration(format!("F^{} ⊄ F^{p} in degree {k}", p + 1)));
                }
                if k < c.hi() {
                    let image = c.diff(k).to_dense().mul(&big)?;
                    if !self.fil(k + 1, p).spans(&image) {
                        return Err(Error::Filtration(format!("d does not preserve F^{p} in degree {k}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &ChainComplex<F> {
        &self.complex
    }

    pub fn p_range(&self) -> (i32, i32) {
        (self.p_min, self.p_max)
    }

    /// Basis of `F^p C^k` as columns.
    pub fn fil(&self, k: i32, p: i32) -> Matrix<F> {
        let n = self.complex.dim(k);
        if k < self.complex.lo() || k > self.complex.hi() {
            return Matrix::zeros(n, 0);
        }
        if p <= self.p_min {
            return Matrix::identity(n);
        }
        if p > self.p_max {
            return Matrix::zeros(n, 0);
        }
        self.spans[(k - self.complex.lo()) as usize][(p - self.p_min) as usize].clone()
    }

    /// Reindexed filtration `F'^p = F^{p+j}`.
    pub fn shift_index(&self, j: i32) -> Self {
        FilteredComplex {
            complex: self.complex.clone(),
            p_min: self.p_min - j,
            p_max: self.p_max - j,
            spans: self.spans.clone(),
        }
    }

    /// `F^p` as a complex, with its inclusion matrices per degree.
    pub fn sub_complex(&self, p: i32) -> (ChainComplex<F>, Vec<Matrix<F>>) {
        let c = &self.complex;
        let (lo, hi) = (c.lo(), c.hi());
        let bases: Vec<Matrix<F>> = (lo..=hi).map(|k| self.fil(k, p)).collect();
        let d = (lo..hi)
            .map(|k| {
                let (s, t) = (&bases[(k - lo) as usize], &bases[(k - lo + 1) as usize]);
                let img = c.diff(k).to_dense().mul(s).unwrap();
                SparseMatrix::from_dense(&t.solve(&img).expect("filtration is d-stable"))
            })
            .collect();
        let sub = ChainComplex::new(lo, bases.iter().map(Matrix::cols).collect(), d).expect("subcomplex of a complex");
        (sub, bases)
    }

    /// `(p, dim F^p H^k)` for `p_min ≤ p ≤ p_max + 1`, the induced filtration
    /// `F^p H^k = image(H^k(F^p) → H^k)`.
    pub fn induced_filtration_dims(&self, k: i32) -> Result<Vec<(i32, usize)>> {
        let c = &self.complex;
        c.cohomology_dim(k)?;
        let dk = c.diff(k).to_dense();
        let b = c.diff(k - 1).to_dense();
        let rb = b.rank();
        (self.p_min..=self.p_max + 1)
            .map(|p| {
                let s = self.fil(k, p);
                let zs = s.mul(&dk.mul(&s)?.kernel())?;
                Ok((p, zs.hstack(&b)?.rank() - rb))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    #[test]
    fn filtration_examples() {
        let c = ChainComplex::<Rational>::new(
            0,
            vec![1, 2],
            vec![SparseMatrix::from_dense(&Matrix::from_ints(&[&[1], &[0]]))],
        )
        .unwrap();
        let t = FilteredComplex::trivial(c.clone(), 0);
        assert_eq!(t.induced_filtration_dims(1).unwrap(), vec![(0, 1), (1, 0)]);
        // stupid filtration: H^1 lives entirely in F^1
        let s = FilteredComplex::stupid(c.clone());
        assert_eq!(s.induced_filtration_dims(1).unwrap(), vec![(0, 1), (1, 1), (2, 0)]);
        assert_eq!(s.induced_filtration_dims(0).unwrap(), vec![(0, 0), (1, 0), (2, 0)]);
        // two-step filtration with zero differential
        let z = ChainComplex::<Rational>::concentrated(0, 3);
        let f = FilteredComplex::new(z, 0, vec![vec![Matrix::identity(3), Matrix::from_ints(&[&[1], &[1], &[0]])]])
            .unwrap();
        assert_eq!(f.induced_filtration_dims(0).unwrap(), vec![(0, 3), (1, 1), (2, 0)]);
        // F^1 = span(e_0) in degree 0 is not d-stable when d e_0 ∉ F^1 C^1 = 0
        let bad = FilteredComplex::new(
            c,
            0,
            vec![vec![Matrix::identity(1), Matrix::identity(1)], vec![Matrix::identity(2), Matrix::zeros(2, 0)]],
        );
        assert!(matches!(bad, Err(Error::Filtration(_))));
    }
}
