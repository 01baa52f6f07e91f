use super::complex::ChainComplex;
use super::field::Field;
use super::matrix::Matrix;
use super::sparse::SparseMatrix;
use crate::{Error, Result};

/// Degreewise involution `ι_k`. In the semilinear case it acts as
/// `v ↦ ι_k · σ(v)`.
#[derive(Debug, Clone)]
pub struct SemilinearInvolution<F> {
    lo: i32,
    mats: Vec<Matrix<F>>,
    semilinear: bool,
}

/// `[[A, −B], [B, A]]` for `M = A + iB`: the matrix of `M` on real and
/// imaginary coordinates.
pub fn realify_linear<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let (a, b) = split(m);
    let top = a.hstack(&b.neg()).unwrap();
    let bottom = b.hstack(&a).unwrap();
    top.vstack(&bottom).unwrap()
}

/// `[[A, B], [B, −A]]` for `v ↦ (A + iB) σ(v)`.
pub fn realify_semilinear<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let (a, b) = split(m);
    let top = a.hstack(&b).unwrap();
    let bottom = b.hstack(&a.neg()).unwrap();
    top.vstack(&bottom).unwrap()
}

/// Real block `[[A], [B]]` of a map from a space that is already real.
pub fn realify_from_real<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let (a, b) = split(m);
    a.vstack(&b).unwrap()
}

fn split<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Matrix<F>) {
    (m.map(|x| x.re_im().0), m.map(|x| x.re_im().1))
}

/// View of a complex over `K` as a complex over the fixed field `K₀`.
/// Fields without an imaginary unit are returned unchanged.
pub fn restrict_scalars<F: Field>(c: &ChainComplex<F>) -> ChainComplex<F> {
    if !F::has_imaginary_unit() {
        return c.clone();
    }
    let (lo, hi) = (c.lo(), c.hi());
    let dims = (lo..=hi).map(|k| 2 * c.dim(k)).collect();
    let d = (lo..hi).map(|k| SparseMatrix::from_dense(&realify_linear(&c.diff(k).to_dense()))).collect();
    ChainComplex::new(lo, dims, d).expect("realification preserves d² = 0")
}

/// Eigenspace `ker(J − λ)` per degree and the restricted differential.
pub fn eigen_subcomplex<F: Field>(c: &ChainComplex<F>, mats: &[Matrix<F>], lambda: &F) -> ChainComplex<F> {
    let (lo, hi) = (c.lo(), c.hi());
    let bases: Vec<Matrix<F>> = (lo..=hi)
        .map(|k| {
            let j = &mats[(k - lo) as usize];
            j.sub(&Matrix::scalar(j.rows(), lambda.clone())).unwrap().kernel()
        })
        .collect();
    let d = (lo..hi)
        .map(|k| {
            let (s, t) = (&bases[(k - lo) as usize], &bases[(k - lo + 1) as usize]);
            let img = c.diff(k).to_dense().mul(s).unwrap();
            SparseMatrix::from_dense(&t.solve(&img).expect("involution commutes with d"))
        })
        .collect();
    ChainComplex::new(lo, bases.iter().map(Matrix::cols).collect(), d).expect("eigenspaces form a subcomplex")
}

impl<F: Field> SemilinearInvolution<F> {
    /// `mats[k − lo]` acts on degree `k` of `c`. Checks shapes, `ι² = id` and
    /// commutation with `d`.
    pub fn new(c: &ChainComplex<F>, mats: Vec<Matrix<F>>, semilinear: bool) -> Result<Self> {
        let lo = c.lo();
        if mats.len() as i32 != c.hi() - lo + 1 {
            return Err(Error::Involution(format!("{} matrices for {} degrees", mats.len(), c.hi() - lo + 1)));
        }
        let iota = SemilinearInvolution { lo, mats, semilinear };
        for k in lo..=c.hi() {
            let j = iota.at(k);
            let n = c.dim(k);
            if (j.rows(), j.cols()) != (n, n) {
                return Err(Error::Involution(format!(
                    "degree {k}: matrix is {}x{}, space has dim {n}",
                    j.rows(),
                    j.cols()
                )));
            }
            let sq = if semilinear { j.mul(&j.conj())? } else { j.mul(j)? };
            if sq != Matrix::identity(n) {
                return Err(Error::Involution(format!("ι² ≠ id in degree {k}")));
            }
            if k < c.hi() {
                let d = c.diff(k).to_dense();
                let dd = if semilinear { d.conj() } else { d.clone() };
                if d.mul(j)? != iota.at(k + 1).mul(&dd)? {
                    return Err(Error::Involution(format!("ι does not commute with d in degree {k}")));
                }
            }
        }
        Ok(iota)
    }

    /// `id` on every degree.
    pub fn identity(c: &ChainComplex<F>) -> Self {
        let mats = (c.lo()..=c.hi()).map(|k| Matrix::identity(c.dim(k))).collect();
        SemilinearInvolution { lo: c.lo(), mats, semilinear: false }
    }

    /// Coefficient conjugation on every degree.
    pub fn conjugation(c: &ChainComplex<F>) -> Result<Self> {
        let mats = (c.lo()..=c.hi()).map(|k| Matrix::identity(c.dim(k))).collect();
        Self::new(c, mats, true)
    }

    pub fn is_semilinear(&self) -> bool {
        self.semilinear
    }

    pub fn at(&self, k: i32) -> &Matrix<F> {
        &self.mats[(k - self.lo) as usize]
    }

    pub fn apply(&self, k: i32, v: &[F]) -> Vec<F> {
        if self.semilinear {
            self.at(k).mul_vec(&v.iter().map(F::conj).collect::<Vec<_>>())
        } else {
            self.at(k).mul_vec(v)
        }
    }

    /// The `K₀`-linear involution on the restricted-scalars complex.
    pub fn realified(&self) -> Vec<Matrix<F>> {
        self.mats
            .iter()
            .map(|j| match (F::has_imaginary_unit(), self.semilinear) {
                (false, _) => j.clone(),
                (true, true) => realify_semilinear(j),
                (true, false) => realify_linear(j),
            })
            .collect()
    }
}

/// Fixed subcomplex of `ι` after restricting scalars to `K₀`.
pub fn iota_invariants<F: Field>(c: &ChainComplex<F>, iota: &SemilinearInvolution<F>) -> Result<ChainComplex<F>> {
    if iota.lo != c.lo() || iota.mats.len() as i32 != c.hi() - c.lo() + 1 {
        return Err(Error::Involution("involution and complex cover different degrees".into()));
    }
    Ok(eigen_subcomplex(&restrict_scalars(c), &iota.realified(), &F::one()))
}

/// `(+1, −1)` eigenspace dims per degree of the realified involution.
pub fn eigen_dims<F: Field>(c: &ChainComplex<F>, iota: &SemilinearInvolution<F>) -> Vec<(i32, usize, usize)> {
    let r = restrict_scalars(c);
    let mats = iota.realified();
    let plus = eigen_subcomplex(&r, &mats, &F::one());
    let minus = eigen_subcomplex(&r, &mats, &F::one().neg());
    (c.lo()..=c.hi()).map(|k| (k, plus.dim(k), minus.dim(k))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{ConjElem, Rational};

    #[test]
    fn invariants_examples() {
        let k = ChainComplex::<ConjElem>::concentrated(0, 1);
        let conj = SemilinearInvolution::conjugation(&k).unwrap();
        assert_eq!(iota_invariants(&k, &conj).unwrap().dim(0), 1);

        let q = ChainComplex::<Rational>::new(0, vec![1, 1], vec![SparseMatrix::identity(1)]).unwrap();
        let id = SemilinearInvolution::identity(&q);
        assert_eq!(iota_invariants(&q, &id).unwrap(), q);

        let k2 = ChainComplex::<ConjElem>::concentrated(0, 2);
        let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let iota = SemilinearInvolution::new(&k2, vec![swap], true).unwrap();
        assert_eq!(iota_invariants(&k2, &iota).unwrap().dim(0), 2);
        assert_eq!(eigen_dims(&k2, &iota), vec![(0, 2, 2)]);

        let not_inv = Matrix::from_ints(&[&[0, 2], &[1, 0]]);
        assert!(matches!(SemilinearInvolution::new(&k2, vec![not_inv], true), Err(Error::Involution(_))));
    }
}
