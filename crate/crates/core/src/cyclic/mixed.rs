use crate::fdalgebra::FdAlgebra;
use crate::linalg::{Field, Matrix, SparseMatrix};
use crate::scalars::Rational;
use crate::{Error, Result};

/// Basis change putting the unit first; the remaining columns are standard
/// basis vectors completing it.
pub fn unit_first_basis(a: &FdAlgebra) -> Matrix<Rational> {
    let n = a.dim();
    let u = Matrix::from_columns(n, &[a.unit().to_vec()]);
    let (_, pivots) = u.hstack(&Matrix::identity(n)).unwrap().rref();
    let mut cols = vec![a.unit().to_vec()];
    cols.extend(pivots.iter().filter(|&&p| p >= 1).map(|&p| a.basis_vector(p - 1)));
    Matrix::from_columns(n, &cols)
}

/// Indexing of `A ⊗ Ā^{⊗k}` where `A` has basis `e_0 = 1, e_1, …, e_{n-1}`
/// and `Ā` is spanned by `e_1, …, e_{n-1}`.
#[derive(Debug, Clone, Copy)]
pub struct TensorIndex {
    pub n: usize,
}

impl TensorIndex {
    pub fn dim(&self, k: usize) -> usize {
        self.n * (self.n - 1).pow(k as u32)
    }

    pub fn index(&self, a0: usize, bars: &[usize]) -> usize {
        let nb = self.n - 1;
        let mut idx = 0;
        for &b in bars.iter().rev() {
            idx = idx * nb + (b - 1);
        }
        a0 + self.n * idx
    }

    pub fn decode(&self, k: usize, idx: usize) -> (usize, Vec<usize>) {
        let nb = self.n - 1;
        let a0 = idx % self.n;
        let mut rest = idx / self.n;
        let mut bars = Vec::with_capacity(k);
        for _ in 0..k {
            bars.push(rest % nb + 1);
            rest /= nb;
        }
        (a0, bars)
    }
}

fn sign(e: usize) -> Rational {
    if e.is_multiple_of(2) {
        Rational::one()
    } else {
        Rational::one().neg()
    }
}

/// Normalized Hochschild chains `C_k = A ⊗ Ā^{⊗k}` for `0 ≤ k ≤ N` with the
/// Hochschild boundary `b` and Connes' operator `B`.
#[derive(Debug, Clone)]
pub struct MixedComplex {
    algebra: FdAlgebra,
    basis: Matrix<Rational>,
    idx: TensorIndex,
    truncation: usize,
    /// `b[k] : C_k → C_{k-1}`; `b[0]` is the zero map to nothing.
    b: Vec<SparseMatrix<Rational>>,
    /// `big_b[k] : C_k → C_{k+1}` for `k < N`.
    big_b: Vec<SparseMatrix<Rational>>,
}

impl MixedComplex {
    pub fn new(a: &FdAlgebra, truncation: usize) -> Result<Self> {
        if a.dim() == 0 {
            return Err(Error::InvalidInput("the zero algebra has no unit".into()));
        }
        let basis = unit_first_basis(a);
        let algebra = a.change_basis(&basis)?;
        let idx = TensorIndex { n: a.dim() };
        let mut b = vec![SparseMatrix::zeros(0, idx.dim(0))];
        for k in 1..=truncation {
            b.push(hochschild_boundary(&algebra, idx, k));
        }
        let big_b = (0..truncation).map(|k| connes_operator(idx, k)).collect();
        Ok(MixedComplex { algebra, basis, idx, truncation, b, big_b })
    }

    /// The algebra in the unit-first basis used for the chains.
    pub fn algebra(&self) -> &FdAlgebra {
        &self.algebra
    }

    /// Columns: the unit-first basis in the original coordinates.
    pub fn basis(&self) -> &Matrix<Rational> {
        &self.basis
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn dim(&self, k: usize) -> usize {
        self.idx.dim(k)
    }

    pub fn b(&self, k: usize) -> &SparseMatrix<Rational> {
        &self.b[k]
    }

    pub fn big_b(&self, k: usize) -> &SparseMatrix<Rational> {
        &self.big_b[k]
    }

    /// Checks `b² = 0`, `B² = 0` and `bB + Bb = 0` wherever all maps exist.
    pub fn check_identities(&self) -> Result<()> {
        let n = self.truncation;
        for k in 2..=n {
            if !self.b[k - 1].mul(&self.b[k])?.is_zero() {
                return Err(Error::NotComplex(k as i32));
            }
        }
        for k in 0..n.saturating_sub(1) {
            if !self.big_b[k + 1].mul(&self.big_b[k])?.is_zero() {
                return Err(Error::NotComplex(k as i32));
            }
        }
        for k in 0..n {
            let bb = self.b[k + 1].mul(&self.big_b[k])?;
            let total = if k == 0 { bb } else { bb.add(&self.big_b[k - 1].mul(&self.b[k])?)? };
            if !total.is_zero() {
                return Err(Error::NotComplex(k as i32));
            }
        }
        Ok(())
    }

    /// Chain map `C_k(A) → C_k(A')` induced by a unital algebra map given in
    /// the unit-first bases of both sides.
    pub fn tensor_map(&self, target: &MixedComplex, f: &Matrix<Rational>, k: usize) -> SparseMatrix<Rational> {
        let images: Vec<Vec<(usize, Rational)>> = (0..self.idx.n)
            .map(|j| {
                (0..target.idx.n).filter_map(|i| Some((i, f.get(i, j).clone())).filter(|x| !x.1.is_zero())).collect()
            })
            .collect();
        let mut trip = Vec::new();
        for col in 0..self.dim(k) {
            let (a0, bars) = self.idx.decode(k, col);
            let mut partial: Vec<(Vec<usize>, Rational)> =
                images[a0].iter().map(|(i, c)| (vec![*i], c.clone())).collect();
            for &bj in &bars {
                let mut next = Vec::new();
                for (t, c) in &partial {
                    for (i, x) in images[bj].iter().filter(|x| x.0 != 0) {
                        let mut t2 = t.clone();
                        t2.push(*i);
                        next.push((t2, c.mul(x)));
                    }
                }
                partial = next;
            }
            for (t, c) in partial {
                trip.push((target.idx.index(t[0], &t[1..]), col, c));
            }
        }
        SparseMatrix::from_triplets(target.dim(k), self.dim(k), trip)
    }
}

fn hochschild_boundary(a: &FdAlgebra, idx: TensorIndex, k: usize) -> SparseMatrix<Rational> {
    let mut trip = Vec::new();
    for col in 0..idx.dim(k) {
        let (a0, bars) = idx.decode(k, col);
        for (c, x) in a.basis_product(a0, bars[0]) {
            trip.push((idx.index(*c, &bars[1..]), col, x.clone()));
        }
        let mut work = bars.clone();
        for j in 0..k - 1 {
            let s = sign(j + 1);
            for (c, x) in a.basis_product(bars[j], bars[j + 1]) {
                if *c == 0 {
                    continue;
                }
                work.clear();
                work.extend_from_slice(&bars[..j]);
                work.push(*c);
                work.extend_from_slice(&bars[j + 2..]);
                trip.push((idx.index(a0, &work), col, x.mul(&s)));
            }
        }
        let s = sign(k);
        for (c, x) in a.basis_product(bars[k - 1], a0) {
            trip.push((idx.index(*c, &bars[..k - 1]), col, x.mul(&s)));
        }
    }
    SparseMatrix::from_triplets(idx.dim(k - 1), idx.dim(k), trip)
}

fn connes_operator(idx: TensorIndex, k: usize) -> SparseMatrix<Rational> {
    let mut trip = Vec::new();
    let mut full = Vec::with_capacity(k + 1);
    for col in 0..idx.dim(k) {
        let (a0, bars) = idx.decode(k, col);
        if a0 == 0 {
            continue;
        }
        full.clear();
        full.push(a0);
        full.extend_from_slice(&bars);
        for i in 0..=k {
            let rotated: Vec<usize> = full[i..].iter().chain(&full[..i]).copied().collect();
            trip.push((idx.index(0, &rotated), col, sign(k * i)));
        }
    }
    SparseMatrix::from_triplets(idx.dim(k + 1), idx.dim(k), trip)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalgebra::{preset, Preset};

    #[test]
    fn indexing_round_trips() {
        let idx = TensorIndex { n: 4 };
        for col in 0..idx.dim(3) {
            let (a0, bars) = idx.decode(3, col);
            assert_eq!(idx.index(a0, &bars), col);
        }
    }

    #[test]
    fn mixed_identities() {
        for p in
            [Preset::DualNumbers, Preset::UpperTriangular(2), Preset::FullMatrix(2), Preset::GroupAlgebra("C3".into())]
        {
            let m = MixedComplex::new(&preset(&p).unwrap(), 4).unwrap();
            m.check_identities().unwrap();
        }
    }
}
