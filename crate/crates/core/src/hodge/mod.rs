//! ℝ-Hodge complexes over the formal field `K = ℚ(i)(t)`, `2πi = i·t`, with
//! optional weight filtrations and ι-structures.
//!
//! `V_R` is a complex over `K₀ = ℚ(t)` stored with real entries in `K`; `V_C`
//! is a filtered complex over `K`; `phi` maps `V_R ⊗ K → V_C`. Weight
//! filtrations are increasing and stored decreasingly as `G^p = W_{-p}`.

mod families;
mod homs;
mod purity;

use std::fmt;

use serde_json::{json, Value};

pub use families::{make_tate, projective_space_complex, spec_field};
pub use homs::{
    abs_hodge_dims, abs_hodge_dims_raw, beilinson_hom_complex, beilinson_hom_complex_iota, deligne_dims,
    deligne_dims_raw, kato_hom_complex, kato_hom_complex_iota, DimTable,
};
pub use purity::{pure_weight_check, PurityVerdict};

use crate::linalg::{cone, ChainComplex, ChainMap, Field, FilteredComplex, Matrix, SemilinearInvolution, SparseMatrix};
use crate::scalars::{ConjElem, ConjField};
use crate::{Error, Result};

type K = ConjElem;

/// `(i·t)^j` in the standard formal field.
pub fn two_pi_i_pow(j: i32) -> K {
    ConjField::standard().two_pi_i().pow(j)
}

/// Increasing weight filtrations on both sides, stored as `G^p = W_{-p}`.
#[derive(Debug, Clone)]
pub struct Weight {
    pub real: FilteredComplex<K>,
    pub complex: FilteredComplex<K>,
}

/// `ι_R` linear on `V_R`, `ι_C` conjugate-linear on `V_C`.
#[derive(Debug, Clone)]
pub struct Iota {
    pub real: SemilinearInvolution<K>,
    pub complex: SemilinearInvolution<K>,
}

#[derive(Debug, Clone)]
pub struct HodgeComplex {
    name: String,
    real: ChainComplex<K>,
    hodge: FilteredComplex<K>,
    phi: Vec<Matrix<K>>,
    weight: Option<Weight>,
    iota: Option<Iota>,
    weak: bool,
}

fn is_real_matrix(m: &Matrix<K>) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| m.get(i, j).is_real()))
}

/// Same filtered complex on a wider degree range.
pub(crate) fn widen_filtered(fc: &FilteredComplex<K>, lo: i32, hi: i32) -> FilteredComplex<K> {
    let c = fc.complex().widen(lo, hi);
    let (p_min, p_max) = fc.p_range();
    let spans = (c.lo()..=c.hi()).map(|k| (p_min..=p_max).map(|p| fc.fil(k, p)).collect()).collect();
    FilteredComplex::new(c, p_min, spans).expect("widening keeps a valid filtration")
}

fn shift_filtered(fc: &FilteredComplex<K>, n: i32) -> FilteredComplex<K> {
    let c = fc.complex().shift(n);
    let (p_min, p_max) = fc.p_range();
    let spans = (c.lo()..=c.hi()).map(|k| (p_min..=p_max).map(|p| fc.fil(k + n, p)).collect()).collect();
    FilteredComplex::new(c, p_min, spans).expect("shifting keeps a valid filtration")
}

fn sum_filtered(a: &FilteredComplex<K>, b: &FilteredComplex<K>) -> FilteredComplex<K> {
    let c = a.complex().direct_sum(b.complex());
    let p_min = a.p_range().0.min(b.p_range().0);
    let p_max = a.p_range().1.max(b.p_range().1);
    let spans = (c.lo()..=c.hi())
        .map(|k| (p_min..=p_max).map(|p| Matrix::block_diag(&[&a.fil(k, p), &b.fil(k, p)])).collect())
        .collect();
    FilteredComplex::new(c, p_min, spans).expect("direct sum of filtrations")
}

fn kron(a: &Matrix<K>, b: &Matrix<K>) -> Matrix<K> {
    Matrix::from_fn(a.rows() * b.rows(), a.cols() * b.cols(), |i, j| {
        a.get(i / b.rows(), j / b.cols()).mul(b.get(i % b.rows(), j % b.cols()))
    })
}

/// Degree bookkeeping for `(C ⊗ D)^n = ⊕_a C^a ⊗ D^{n-a}`.
struct TensorLayout {
    lo: i32,
    hi: i32,
    c: ChainComplex<K>,
    d: ChainComplex<K>,
}

impl TensorLayout {
    fn new(c: &ChainComplex<K>, d: &ChainComplex<K>) -> Self {
        TensorLayout { lo: c.lo() + d.lo(), hi: c.hi() + d.hi(), c: c.clone(), d: d.clone() }
    }

    /// `(a, offset, size)` of the summands in degree `n`.
    fn summands(&self, n: i32) -> Vec<(i32, usize, usize)> {
        let mut off = 0;
        let mut out = Vec::new();
        for a in self.c.lo()..=self.c.hi() {
            let s = self.c.dim(a) * self.d.dim(n - a);
            out.push((a, off, s));
            off += s;
        }
        out
    }

    fn dim(&self, n: i32) -> usize {
        self.summands(n).iter().map(|x| x.2).sum()
    }

    fn complex(&self) -> ChainComplex<K> {
        let dims = (self.lo..=self.hi).map(|n| self.dim(n)).collect();
        let d = (self.lo..self.hi)
            .map(|n| {
                let src = self.summands(n);
                let tgt = self.summands(n + 1);
                let mut m = Matrix::zeros(self.dim(n + 1), self.dim(n));
                for &(a, off, _) in &src {
                    let (ca, db) = (self.c.dim(a), self.d.dim(n - a));
                    if ca * db == 0 {
                        continue;
                    }
                    // d ⊗ 1 into summand a + 1
                    if let Some(&(_, toff, _)) = tgt.iter().find(|t| t.0 == a + 1) {
                        let blk = kron(&self.c.diff(a).to_dense(), &Matrix::identity(db));
                        paste(&mut m, toff, off, &blk);
                    }
                    // (−1)^a 1 ⊗ d into summand a
                    if let Some(&(_, toff, _)) = tgt.iter().find(|t| t.0 == a) {
                        let mut blk = kron(&Matrix::identity(ca), &self.d.diff(n - a).to_dense());
                        if a.rem_euclid(2) == 1 {
                            blk = blk.neg();
                        }
                        paste(&mut m, toff, off, &blk);
                    }
                }
                SparseMatrix::from_dense(&m)
            })
            .collect();
        ChainComplex::new(self.lo, dims, d).expect("tensor product of complexes")
    }

    /// Block-diagonal `f ⊗ g` in degree `n` from degreewise maps.
    fn map(
        &self,
        n: i32,
        rows: &TensorLayout,
        f: impl Fn(i32) -> Matrix<K>,
        g: impl Fn(i32) -> Matrix<K>,
    ) -> Matrix<K> {
        let src = self.summands(n);
        let tgt = rows.summands(n);
        let mut m = Matrix::zeros(rows.dim(n), self.dim(n));
        for (&(a, off, s), &(_, toff, t)) in src.iter().zip(&tgt) {
            if s * t > 0 {
                paste(&mut m, toff, off, &kron(&f(a), &g(n - a)));
            }
        }
        m
    }

    fn filtration(
        &self,
        fc: &FilteredComplex<K>,
        fd: &FilteredComplex<K>,
        complex: ChainComplex<K>,
    ) -> FilteredComplex<K> {
        let (a_min, a_max) = fc.p_range();
        let (b_min, b_max) = fd.p_range();
        let spans = (self.lo..=self.hi)
            .map(|n| {
                (a_min + b_min..=a_max + b_max)
                    .map(|p| {
                        let mut gens = Matrix::zeros(self.dim(n), 0);
                        for &(a, off, s) in &self.summands(n) {
                            if s == 0 {
                                continue;
                            }
                            for x in a_min..=a_max {
                                let blk = kron(&fc.fil(a, x), &fd.fil(n - a, p - x));
                                let mut emb = Matrix::zeros(self.dim(n), blk.cols());
                                paste(&mut emb, off, 0, &blk);
                                gens = gens.hstack(&emb).unwrap();
                            }
                        }
                        gens
                    })
                    .collect()
            })
            .collect();
        FilteredComplex::new(complex, a_min + b_min, spans).expect("convolution filtration")
    }
}

fn paste(m: &mut Matrix<K>, r0: usize, c0: usize, blk: &Matrix<K>) {
    for i in 0..blk.rows() {
        for j in 0..blk.cols() {
            m.set(r0 + i, c0 + j, blk.get(i, j).clone());
        }
    }
}

impl HodgeComplex {
    /// Checks that `V_R` is real, `phi` is a chain map of the right shapes and,
    /// unless `weak`, that `phi ⊗ K` is a quasi-isomorphism.
    pub fn new(
        name: impl Into<String>,
        real: ChainComplex<K>,
        hodge: FilteredComplex<K>,
        phi: Vec<Matrix<K>>,
        weak: bool,
    ) -> Result<Self> {
        let lo = real.lo().min(hodge.complex().lo());
        let hi = real.hi().max(hodge.complex().hi());
        let real = real.widen(lo, hi);
        let hodge = widen_filtered(&hodge, lo, hi);
        if phi.len() as i32 != hi - lo + 1 {
            return Err(Error::Shape(format!("phi has {} degrees, complexes span {}", phi.len(), hi - lo + 1)));
        }
        for k in lo..hi {
            if !is_real_matrix(&real.diff(k).to_dense()) {
                return Err(Error::InvalidInput(format!("V_R differential in degree {k} is not real")));
            }
        }
        let h = HodgeComplex { name: name.into(), real, hodge, phi, weight: None, iota: None, weak };
        let f = h.phi_map()?;
        if !weak && !cone(&f).is_acyclic() {
            return Err(Error::InvalidInput("phi ⊗ K is not a quasi-isomorphism".into()));
        }
        Ok(h)
    }

    fn phi_map(&self) -> Result<ChainMap<K>> {
        let maps = (self.lo()..=self.hi()).map(|k| (k, SparseMatrix::from_dense(self.phi(k)))).collect();
        ChainMap::new(self.real.clone(), self.hodge.complex().clone(), maps)
    }

    /// Adds weight filtrations (as `G^p = W_{-p}`), checking `phi(W_n) ⊂ W_n`.
    pub fn with_weight(mut self, real: FilteredComplex<K>, complex: FilteredComplex<K>) -> Result<Self> {
        let real = widen_filtered(&real, self.lo(), self.hi());
        let complex = widen_filtered(&complex, self.lo(), self.hi());
        if real.complex() != &self.real || complex.complex() != self.hodge.complex() {
            return Err(Error::Filtration("weight filtration lives on a different complex".into()));
        }
        let (lo_p, hi_p) = (real.p_range().0.min(complex.p_range().0), real.p_range().1.max(complex.p_range().1));
        for k in self.lo()..=self.hi() {
            for p in lo_p..=hi_p + 1 {
                if !complex.fil(k, p).spans(&self.phi(k).mul(&real.fil(k, p))?) {
                    return Err(Error::Filtration(format!("phi does not respect W_{} in degree {k}", -p)));
                }
            }
        }
        self.weight = Some(Weight { real, complex });
        Ok(self)
    }

    /// Adds `ι_R` (linear) and `ι_C` (conjugate-linear), checking involutivity,
    /// compatibility with `d`, with `phi` and with `F`.
    pub fn with_iota(mut self, real: Vec<Matrix<K>>, complex: Vec<Matrix<K>>) -> Result<Self> {
        if !real.iter().all(is_real_matrix) {
            return Err(Error::Involution("ι_R must be real".into()));
        }
        let jr = SemilinearInvolution::new(&self.real, real, false)?;
        let jc = SemilinearInvolution::new(self.hodge.complex(), complex, true)?;
        let (p_min, p_max) = self.hodge.p_range();
        for k in self.lo()..=self.hi() {
            let phi = self.phi(k);
            if phi.mul(jr.at(k))? != jc.at(k).mul(&phi.conj())? {
                return Err(Error::Involution(format!("ι does not commute with phi in degree {k}")));
            }
            for p in p_min..=p_max {
                let f = self.hodge.fil(k, p);
                if !f.spans(&jc.at(k).mul(&f.conj())?) {
                    return Err(Error::Involution(format!("ι_C does not preserve F^{p} in degree {k}")));
                }
            }
        }
        self.iota = Some(Iota { real: jr, complex: jc });
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn lo(&self) -> i32 {
        self.real.lo()
    }

    pub fn hi(&self) -> i32 {
        self.real.hi()
    }

    pub fn real(&self) -> &ChainComplex<K> {
        &self.real
    }

    pub fn hodge(&self) -> &FilteredComplex<K> {
        &self.hodge
    }

    pub fn phi(&self, k: i32) -> &Matrix<K> {
        &self.phi[(k - self.lo()) as usize]
    }

    pub fn weight(&self) -> Option<&Weight> {
        self.weight.as_ref()
    }

    pub fn iota(&self) -> Option<&Iota> {
        self.iota.as_ref()
    }

    pub fn is_weak(&self) -> bool {
        self.weak
    }

    /// `cone(phi ⊗ K)` is acyclic.
    pub fn quasi_iso_audit(&self) -> bool {
        self.phi_map().map(|f| cone(&f).is_acyclic()).unwrap_or(false)
    }

    /// `V(j) = V ⊗ ℝ(j)`: `F^p ↦ F^{p+j}`, `W_n ↦ W_{n+2j}`, `phi · (i·t)^j`,
    /// `ι_R · (−1)^j`.
    pub fn twist(&self, j: i32) -> HodgeComplex {
        let s = two_pi_i_pow(j);
        let sign = if j.rem_euclid(2) == 0 { K::one() } else { K::one().neg() };
        HodgeComplex {
            name: format!("{}({j})", self.name),
            real: self.real.clone(),
            hodge: self.hodge.shift_index(j),
            phi: self.phi.iter().map(|m| m.scale(&s)).collect(),
            weight: self
                .weight
                .as_ref()
                .map(|w| Weight { real: w.real.shift_index(-2 * j), complex: w.complex.shift_index(-2 * j) }),
            iota: self.iota.as_ref().map(|i| Iota {
                real: SemilinearInvolution::new(
                    &self.real,
                    (self.lo()..=self.hi()).map(|k| i.real.at(k).scale(&sign)).collect(),
                    false,
                )
                .expect("sign change keeps an involution"),
                complex: i.complex.clone(),
            }),
            weak: self.weak,
        }
    }

    /// `V[n]`, so that degree `k` of the result is degree `k + n` of `V`.
    pub fn shift(&self, n: i32) -> HodgeComplex {
        let real = self.real.shift(n);
        let hodge = shift_filtered(&self.hodge, n);
        let phi = (real.lo()..=real.hi()).map(|k| self.phi(k + n).clone()).collect();
        let iota = self.iota.as_ref().map(|i| Iota {
            real: SemilinearInvolution::new(
                &real,
                (real.lo()..=real.hi()).map(|k| i.real.at(k + n).clone()).collect(),
                false,
            )
            .expect("shifted involution"),
            complex: SemilinearInvolution::new(
                hodge.complex(),
                (real.lo()..=real.hi()).map(|k| i.complex.at(k + n).clone()).collect(),
                true,
            )
            .expect("shifted involution"),
        });
        HodgeComplex {
            name: format!("{}[{n}]", self.name),
            weight: self
                .weight
                .as_ref()
                .map(|w| Weight { real: shift_filtered(&w.real, n), complex: shift_filtered(&w.complex, n) }),
            real,
            hodge,
            phi,
            iota,
            weak: self.weak,
        }
    }

    /// Direct sum; weight and ι survive when both summands carry them.
    pub fn direct_sum(&self, o: &HodgeComplex) -> HodgeComplex {
        let lo = self.lo().min(o.lo());
        let hi = self.hi().max(o.hi());
        let a = self.widened(lo, hi);
        let b = o.widened(lo, hi);
        let real = a.real.direct_sum(&b.real);
        let hodge = sum_filtered(&a.hodge, &b.hodge);
        let diag = |x: &Matrix<K>, y: &Matrix<K>| Matrix::block_diag(&[x, y]);
        let phi = (lo..=hi).map(|k| diag(a.phi(k), b.phi(k))).collect();
        let weight = match (&a.weight, &b.weight) {
            (Some(x), Some(y)) => {
                Some(Weight { real: sum_filtered(&x.real, &y.real), complex: sum_filtered(&x.complex, &y.complex) })
            }
            _ => None,
        };
        let iota = match (&a.iota, &b.iota) {
            (Some(x), Some(y)) => Some(Iota {
                real: SemilinearInvolution::new(
                    &real,
                    (lo..=hi).map(|k| diag(x.real.at(k), y.real.at(k))).collect(),
                    false,
                )
                .expect("sum of involutions"),
                complex: SemilinearInvolution::new(
                    hodge.complex(),
                    (lo..=hi).map(|k| diag(x.complex.at(k), y.complex.at(k))).collect(),
                    true,
                )
                .expect("sum of involutions"),
            }),
            _ => None,
        };
        HodgeComplex {
            name: format!("{} ⊕ {}", self.name, o.name),
            real,
            hodge,
            phi,
            weight,
            iota,
            weak: self.weak || o.weak,
        }
    }

    fn widened(&self, lo: i32, hi: i32) -> HodgeComplex {
        let real = self.real.widen(lo, hi);
        let hodge = widen_filtered(&self.hodge, lo, hi);
        let phi = (real.lo()..=real.hi())
            .map(|k| if k >= self.lo() && k <= self.hi() { self.phi(k).clone() } else { Matrix::zeros(0, 0) })
            .collect();
        let pad = |inv: &SemilinearInvolution<K>, c: &ChainComplex<K>, semi: bool| {
            let mats = (c.lo()..=c.hi())
                .map(|k| if k >= self.lo() && k <= self.hi() { inv.at(k).clone() } else { Matrix::zeros(0, 0) })
                .collect();
            SemilinearInvolution::new(c, mats, semi).expect("padding keeps an involution")
        };
        HodgeComplex {
            name: self.name.clone(),
            weight: self
                .weight
                .as_ref()
                .map(|w| Weight { real: widen_filtered(&w.real, lo, hi), complex: widen_filtered(&w.complex, lo, hi) }),
            iota: self
                .iota
                .as_ref()
                .map(|i| Iota { real: pad(&i.real, &real, false), complex: pad(&i.complex, hodge.complex(), true) }),
            real,
            hodge,
            phi,
            weak: self.weak,
        }
    }

    /// Tensor product with Koszul signs and convolved filtrations.
    pub fn tensor(&self, o: &HodgeComplex) -> Result<HodgeComplex> {
        let lr = TensorLayout::new(&self.real, &o.real);
        let lc = TensorLayout::new(self.hodge.complex(), o.hodge.complex());
        let real = lr.complex();
        let cc = lc.complex();
        let hodge = lc.filtration(&self.hodge, &o.hodge, cc.clone());
        let phi = (lr.lo..=lr.hi).map(|n| lr.map(n, &lc, |a| self.phi(a).clone(), |b| o.phi(b).clone())).collect();
        let mut h =
            HodgeComplex::new(format!("{} ⊗ {}", self.name, o.name), real.clone(), hodge, phi, self.weak || o.weak)?;
        if let (Some(x), Some(y)) = (&self.weight, &o.weight) {
            let wr = lr.filtration(&x.real, &y.real, real.clone());
            let wc = lc.filtration(&x.complex, &y.complex, cc.clone());
            h = h.with_weight(wr, wc)?;
        }
        if let (Some(x), Some(y)) = (&self.iota, &o.iota) {
            let jr =
                (lr.lo..=lr.hi).map(|n| lr.map(n, &lr, |a| x.real.at(a).clone(), |b| y.real.at(b).clone())).collect();
            let jc = (lc.lo..=lc.hi)
                .map(|n| lc.map(n, &lc, |a| x.complex.at(a).clone(), |b| y.complex.at(b).clone()))
                .collect();
            h = h.with_iota(jr, jc)?;
        }
        Ok(h)
    }

    pub fn to_json(&self) -> Value {
        let (p_min, p_max) = self.hodge.p_range();
        let degrees: Vec<Value> = (self.lo()..=self.hi())
            .map(|k| {
                let f: Vec<Value> =
                    (p_min..=p_max + 1).map(|p| json!({"p": p, "dim": self.hodge.fil(k, p).cols()})).collect();
                json!({
                    "degree": k,
                    "dim_real": self.real.dim(k),
                    "dim_complex": self.hodge.complex().dim(k),
                    "hodge_filtration": f,
                    "phi": (0..self.phi(k).rows())
                        .map(|i| (0..self.phi(k).cols()).map(|j| self.phi(k).get(i, j).render()).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "name": self.name,
            "degrees": degrees,
            "has_weight": self.weight.is_some(),
            "has_iota": self.iota.is_some(),
            "weak": self.weak,
        })
    }
}

impl fmt::Display for HodgeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.name)?;
        for k in self.lo()..=self.hi() {
            if k > self.lo() {
                write!(f, ", ")?;
            }
            write!(f, "{k}: {}|{}", self.real.dim(k), self.hodge.complex().dim(k))?;
        }
        write!(f, "]")
    }
}
