//! Normalized Hochschild complex of a finite-dimensional algebra and the
//! HH / HC / HC⁻ / HP dimension tables read off truncations of the
//! `(b, B)`-bicomplex.
//!
//! `CC_m = C_m ⊕ C_{m-2} ⊕ …` with `d(x_0, x_1, …) = (b x_0 + B x_1, b x_1 + B x_2, …)`.
//! `S` drops the first column. `HP_n` is read as the dimension of the image of
//! `S^c : HC_{n+2c} → HC_n` once it stops shrinking; a degree is *stable* when
//! the last two admissible `c` agree. `HC⁻` comes from the exact sequence
//! `0 → CC⁻ → CP → CC[2] → 0`.

mod mixed;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

pub use mixed::{unit_first_basis, MixedComplex, TensorIndex};

use crate::fdalgebra::{radical, semisimple_quotient, FdAlgebra};
use crate::linalg::{Field, Matrix, SparseMatrix};
use crate::scalars::Rational;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableEntry {
    pub dim: usize,
    pub stable: bool,
}

/// Dimensions by homological degree, each flagged stable or provisional.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyTable {
    pub name: String,
    entries: BTreeMap<i32, TableEntry>,
}

impl HomologyTable {
    pub fn new(name: impl Into<String>) -> Self {
        HomologyTable { name: name.into(), entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, n: i32, dim: usize, stable: bool) {
        self.entries.insert(n, TableEntry { dim, stable });
    }

    pub fn entry(&self, n: i32) -> Option<TableEntry> {
        self.entries.get(&n).copied()
    }

    pub fn dim(&self, n: i32) -> Option<usize> {
        self.entry(n).map(|e| e.dim)
    }

    /// Dimension at a stable degree, `None` if absent or provisional.
    pub fn stable_dim(&self, n: i32) -> Option<usize> {
        self.entry(n).filter(|e| e.stable).map(|e| e.dim)
    }

    pub fn entries(&self) -> impl Iterator<Item = (i32, TableEntry)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn stable_degrees(&self) -> Vec<i32> {
        self.entries().filter(|(_, e)| e.stable).map(|(n, _)| n).collect()
    }

    /// Degrees `≤ max` stable in both tables.
    pub fn common_stable(&self, o: &HomologyTable, max: i32) -> Vec<i32> {
        self.stable_degrees().into_iter().filter(|n| *n <= max && o.stable_dim(*n).is_some()).collect()
    }

    /// Whether the tables agree on every degree `≤ max` stable in both.
    pub fn agrees_on_stable(&self, o: &HomologyTable, max: i32) -> bool {
        self.common_stable(o, max).iter().all(|n| self.dim(*n) == o.dim(*n))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> =
            self.entries().map(|(n, e)| json!({"degree": n, "dim": e.dim, "stable": e.stable})).collect();
        json!({"name": self.name, "entries": rows})
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.name)?;
        for (n, e) in self.entries() {
            write!(f, " {}={}{}", n, e.dim, if e.stable { "" } else { "?" })?;
        }
        Ok(())
    }
}

/// Column-block sizes of `CC_m`: block `j` is `C_{m-2j}`.
fn block_dims(mc: &MixedComplex, m: usize) -> Vec<usize> {
    (0..=m / 2).map(|j| mc.dim(m - 2 * j)).collect()
}

fn cc_dim(mc: &MixedComplex, m: usize) -> usize {
    block_dims(mc, m).iter().sum()
}

/// Total differential `CC_m → CC_{m-1}` (requires `m ≤ N`).
fn total_diff(mc: &MixedComplex, m: usize) -> SparseMatrix<Rational> {
    let cols = block_dims(mc, m);
    if m == 0 {
        return SparseMatrix::zeros(0, cols[0]);
    }
    let rows = block_dims(mc, m - 1);
    let mut grid: Vec<Vec<Option<&SparseMatrix<Rational>>>> = vec![vec![None; cols.len()]; rows.len()];
    for j in 0..cols.len() {
        let k = m - 2 * j;
        if k >= 1 {
            grid[j][j] = Some(mc.b(k));
        }
        if j >= 1 {
            grid[j - 1][j] = Some(mc.big_b(k));
        }
    }
    SparseMatrix::blocks(&rows, &cols, &grid).expect("block shapes")
}

/// Block-diagonal map `CC_m(A) → CC_m(A')`.
fn total_map(src: &MixedComplex, dst: &MixedComplex, f: &Matrix<Rational>, m: usize) -> SparseMatrix<Rational> {
    let maps: Vec<SparseMatrix<Rational>> = (0..=m / 2).map(|j| src.tensor_map(dst, f, m - 2 * j)).collect();
    let nb = maps.len();
    let grid: Vec<Vec<Option<&SparseMatrix<Rational>>>> =
        (0..nb).map(|i| (0..nb).map(|j| (i == j).then_some(&maps[i])).collect()).collect();
    SparseMatrix::blocks(&block_dims(dst, m), &block_dims(src, m), &grid).expect("block shapes")
}

/// Rank data of the truncated `(b, B)`-bicomplex: `prefix[m][c]` is the rank
/// of `d_m` restricted to the first `c` column blocks.
#[derive(Debug, Clone)]
pub struct CyclicRanks {
    truncation: usize,
    cc_dims: Vec<usize>,
    block_dims: Vec<Vec<usize>>,
    prefix: Vec<Vec<usize>>,
}

impl CyclicRanks {
    pub fn compute(mc: &MixedComplex) -> Self {
        let n = mc.truncation();
        let mut prefix = Vec::new();
        let mut bds = Vec::new();
        for m in 0..=n {
            let bd = block_dims(mc, m);
            let d = total_diff(mc, m);
            let mut breaks = vec![0];
            let mut acc = 0;
            for s in &bd {
                acc += s;
                breaks.push(acc);
            }
            prefix.push(d.prefix_ranks(&breaks));
            bds.push(bd);
        }
        CyclicRanks { truncation: n, cc_dims: bds.iter().map(|b| b.iter().sum()).collect(), block_dims: bds, prefix }
    }

    fn full(&self, m: usize) -> usize {
        *self.prefix[m].last().unwrap()
    }

    /// `dim HC_m`, exact for `m < N`.
    pub fn hc(&self, m: usize) -> Option<usize> {
        (m < self.truncation).then(|| self.cc_dims[m] - self.full(m) - self.full(m + 1))
    }

    /// `dim image(S^c : HC_{n+2c} → HC_n)`, defined for `n + 2c ≤ N`, `n < N`.
    pub fn s_image(&self, n: usize, c: usize) -> Option<usize> {
        let m = n + 2 * c;
        if m > self.truncation || n >= self.truncation {
            return None;
        }
        let cycles = self.cc_dims[m] - self.full(m);
        let u: usize = self.block_dims[m][..c].iter().sum();
        let low_cycles = u - self.prefix[m][c];
        Some(cycles - low_cycles - self.full(n + 1))
    }
}

/// HH, HC, HC⁻ and HP tables from one truncation.
#[derive(Debug, Clone)]
pub struct CyclicTables {
    pub truncation: usize,
    pub columns: usize,
    pub hc: HomologyTable,
    pub hc_minus: HomologyTable,
    pub hp: HomologyTable,
}

impl CyclicTables {
    pub fn to_json(&self) -> Value {
        json!({
            "truncation": self.truncation,
            "columns": self.columns,
            "HC": self.hc.to_json(),
            "HC-": self.hc_minus.to_json(),
            "HP": self.hp.to_json(),
        })
    }
}

/// `dim HH_k = dim C_k − rank b_k − rank b_{k+1}`, exact for `k < N`.
pub fn hh_dims(a: &FdAlgebra, truncation: usize) -> Result<HomologyTable> {
    let mc = MixedComplex::new(a, truncation)?;
    Ok(hh_from(&mc))
}

fn hh_from(mc: &MixedComplex) -> HomologyTable {
    let n = mc.truncation();
    let ranks: Vec<usize> = (0..=n).map(|k| if k == 0 { 0 } else { mc.b(k).rank() }).collect();
    let mut t = HomologyTable::new("HH");
    for k in 0..n {
        t.insert(k as i32, mc.dim(k) - ranks[k] - ranks[k + 1], true);
    }
    t
}

/// HC, HC⁻ and HP tables. `columns` bounds the number of bicomplex columns
/// used by the `S`-tower (at least 2). HP is reported for degrees `-2..N`,
/// negative degrees by 2-periodicity.
pub fn hc_hcminus_hp_dims(a: &FdAlgebra, truncation: usize, columns: usize) -> Result<CyclicTables> {
    let mc = MixedComplex::new(a, truncation)?;
    Ok(tables_from(&CyclicRanks::compute(&mc), columns))
}

pub fn default_columns(truncation: usize) -> usize {
    truncation / 2 + 1
}

fn tables_from(r: &CyclicRanks, columns: usize) -> CyclicTables {
    let n = r.truncation;
    let columns = columns.max(2);
    let mut hc = HomologyTable::new("HC");
    for m in 0..n {
        hc.insert(m as i32, r.hc(m).unwrap(), true);
    }
    let mut hp = HomologyTable::new("HP");
    for deg in 0..n {
        let c_max = ((n - deg) / 2).min(columns - 1);
        let top = r.s_image(deg, c_max).unwrap();
        let stable = c_max >= 1 && r.s_image(deg, c_max - 1) == Some(top);
        hp.insert(deg as i32, top, stable);
    }
    for deg in [-2i32, -1] {
        if let Some(e) = hp.entry(deg.rem_euclid(2)) {
            hp.insert(deg, e.dim, e.stable);
        }
    }
    let mut hcm = HomologyTable::new("HC-");
    let image = |m: i32| -> Option<TableEntry> {
        if m < 0 {
            Some(TableEntry { dim: 0, stable: true })
        } else {
            hp.entry(m)
        }
    };
    let hc_at = |m: i32| -> Option<TableEntry> {
        if m < 0 {
            Some(TableEntry { dim: 0, stable: true })
        } else {
            hc.entry(m)
        }
    };
    for deg in -2..n as i32 {
        let parts = [hp.entry(deg), image(deg - 2), hc_at(deg - 1), image(deg - 1)];
        if parts.iter().any(Option::is_none) {
            continue;
        }
        let [p, i2, h1, i1] = parts.map(Option::unwrap);
        let dim = (p.dim + h1.dim).saturating_sub(i2.dim + i1.dim);
        hcm.insert(deg, dim, p.stable && i2.stable && h1.stable && i1.stable);
    }
    CyclicTables { truncation: n, columns, hc, hc_minus: hcm, hp }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PeriodicityVerdict {
    Pass { checked: Vec<i32> },
    Fail { degree: i32 },
    Inconclusive,
}

/// `dim HP_n = dim HP_{n-2}` on every pair of stable nonnegative degrees;
/// inconclusive when no such pair exists.
pub fn periodicity_check(t: &CyclicTables) -> PeriodicityVerdict {
    let mut checked = Vec::new();
    for n in 2..t.truncation as i32 {
        if let (Some(x), Some(y)) = (t.hp.stable_dim(n), t.hp.stable_dim(n - 2)) {
            if x != y {
                return PeriodicityVerdict::Fail { degree: n };
            }
            checked.push(n);
        }
    }
    if checked.is_empty() {
        PeriodicityVerdict::Inconclusive
    } else {
        PeriodicityVerdict::Pass { checked }
    }
}

/// Homology of the cone of `CC(A) → CC(Aˢˢ)` in degrees `0..N`. Its degree-`m`
/// entry is the relative cyclic homology `HC_{m-1}(A, rad A)`.
pub fn relative_cone_dims(a: &FdAlgebra, truncation: usize) -> Result<HomologyTable> {
    let mut t = HomologyTable::new("HC(A,I)[1]");
    let rad = radical(a);
    if rad.cols() == 0 {
        for m in 0..truncation {
            t.insert(m as i32, 0, true);
        }
        return Ok(t);
    }
    let (q, _, projection) = semisimple_quotient(a, &rad);
    let src = MixedComplex::new(a, truncation)?;
    let dst = MixedComplex::new(&q, truncation)?;
    let inv = dst.basis().inverse().ok_or_else(|| Error::Shape("quotient basis".into()))?;
    let f = inv.mul(&projection)?.mul(src.basis())?;
    // D_m : CC_{m-1}(A) ⊕ CC_m(A') → CC_{m-2}(A) ⊕ CC_{m-1}(A')
    let cone_diff = |m: usize| -> SparseMatrix<Rational> {
        let dst_cols = cc_dim(&dst, m);
        if m == 0 {
            return SparseMatrix::zeros(0, dst_cols);
        }
        let src_cols = cc_dim(&src, m - 1);
        let neg_d = total_diff(&src, m - 1).neg();
        let fm = total_map(&src, &dst, &f, m - 1);
        let dd = total_diff(&dst, m);
        let src_rows = if m >= 2 { cc_dim(&src, m - 2) } else { 0 };
        let rows = [src_rows, cc_dim(&dst, m - 1)];
        let grid = vec![vec![Some(&neg_d), None], vec![Some(&fm), Some(&dd)]];
        SparseMatrix::blocks(&rows, &[src_cols, dst_cols], &grid).expect("cone shapes")
    };
    let ranks: Vec<usize> = (0..=truncation).map(|m| cone_diff(m).rank()).collect();
    for m in 0..truncation {
        let dim = cc_dim(&dst, m) + if m >= 1 { cc_dim(&src, m - 1) } else { 0 };
        t.insert(m as i32, dim - ranks[m] - ranks[m + 1], true);
    }
    Ok(t)
}

/// All cyclic data of one algebra.
pub fn cyclic_tables(a: &FdAlgebra, truncation: usize, columns: usize) -> Result<(HomologyTable, CyclicTables)> {
    Ok(tables_of(&MixedComplex::new(a, truncation)?, columns))
}

pub fn tables_of(mc: &MixedComplex, columns: usize) -> (HomologyTable, CyclicTables) {
    (hh_from(mc), tables_from(&CyclicRanks::compute(mc), columns))
}

/// Columns `vs` placed below `offset` zero rows.
fn stacked(offset: usize, n: usize, vs: &[Vec<Rational>]) -> SparseMatrix<Rational> {
    let trip = vs.iter().enumerate().flat_map(|(j, v)| {
        v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(i, x)| (offset + i, j, x.clone()))
    });
    SparseMatrix::from_triplets(offset + n, vs.len(), trip)
}

/// Membership of degree-zero classes in the `S`-tower image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCheck {
    /// Every class lies in `image(S^c : HC_{2c} → HC_0)`.
    pub in_image: bool,
    /// Rank of the classes in `HH_0 = A/[A, A]`.
    pub independent: usize,
}

/// Tests elements of `A` (original coordinates) against the image of `S^c`.
/// A class `v` lies in it iff some cycle `z ∈ CC_{2c}` has bottom component
/// `v + b(w)`, i.e. iff appending `(0; v)` to `[d_{2c}, 0; P_c, −b_1]` keeps
/// the rank.
pub fn degree_zero_classes(mc: &MixedComplex, c: usize, classes: &[Vec<Rational>]) -> Result<ClassCheck> {
    let n_top = mc.truncation();
    if 2 * c > n_top || n_top == 0 {
        return Err(Error::DegreeRange { degree: 2 * c as i32, lo: 0, hi: n_top as i32 });
    }
    let n = mc.dim(0);
    let inv = mc.basis().inverse().ok_or_else(|| Error::Shape("unit-first basis".into()))?;
    let vs: Vec<Vec<Rational>> = classes.iter().map(|v| inv.mul_vec(v)).collect();
    let m = 2 * c;
    let cols = cc_dim(mc, m);
    let d = total_diff(mc, m);
    let proj = SparseMatrix::from_triplets(n, cols, (0..n).map(|i| (i, cols - n + i, Rational::one())));
    let neg_b1 = mc.b(1).neg();
    let top_rows = if m >= 1 { cc_dim(mc, m - 1) } else { 0 };
    let grid = vec![vec![Some(&d), None], vec![Some(&proj), Some(&neg_b1)]];
    let system = SparseMatrix::blocks(&[top_rows, n], &[cols, mc.dim(1)], &grid)?;
    let in_image = system.hstack(&stacked(top_rows, n, &vs))?.rank() == system.rank();
    let values = stacked(0, n, &vs);
    let b1 = mc.b(1);
    let independent = b1.hstack(&values)?.rank() - b1.rank();
    Ok(ClassCheck { in_image, independent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalgebra::{preset, Preset};

    fn alg(p: Preset) -> FdAlgebra {
        preset(&p).unwrap()
    }

    #[test]
    fn rationals() {
        let (hh, t) = cyclic_tables(&alg(Preset::Rational), 6, 4).unwrap();
        assert_eq!(hh.dim(0), Some(1));
        assert_eq!(hh.dim(1), Some(0));
        for n in 0..6 {
            assert_eq!(t.hc.dim(n), Some(if n % 2 == 0 { 1 } else { 0 }));
        }
        for n in -2..4 {
            assert_eq!(t.hp.stable_dim(n), Some(if n % 2 == 0 { 1 } else { 0 }), "HP_{n}");
        }
        for n in -2..=0 {
            assert_eq!(t.hc_minus.dim(n), Some(if n % 2 == 0 { 1 } else { 0 }));
        }
        assert_eq!(t.hc_minus.stable_dim(1), Some(0));
        assert_eq!(t.hc_minus.stable_dim(2), Some(0));
        assert!(matches!(periodicity_check(&t), PeriodicityVerdict::Pass { .. }));
    }

    #[test]
    fn dual_numbers() {
        // HH_0 = 2 and HH_k = 1 for k ≥ 1; HC_n = 2 for n even, 0 for n odd
        let (hh, t) = cyclic_tables(&alg(Preset::DualNumbers), 6, 4).unwrap();
        assert_eq!(hh.dim(0), Some(2));
        for k in 1..6 {
            assert_eq!(hh.dim(k), Some(1));
        }
        assert_eq!(t.hc.dim(0), Some(2));
        assert_eq!(t.hc.dim(1), Some(0));
        assert_eq!(t.hc.dim(2), Some(2));
        assert_eq!(t.hp.stable_dim(0), Some(1));
        assert_eq!(t.hp.stable_dim(1), Some(0));
        let rel = relative_cone_dims(&alg(Preset::DualNumbers), 6).unwrap();
        assert_eq!(rel.dim(0), Some(0));
        for m in 1..6 {
            assert_eq!(rel.dim(m), Some((m % 2) as usize), "rel {m}");
        }
    }

    #[test]
    fn morita_small() {
        let (hh, t) = cyclic_tables(&alg(Preset::FullMatrix(2)), 4, 3).unwrap();
        assert_eq!(hh.dim(0), Some(1));
        assert_eq!(hh.dim(1), Some(0));
        assert_eq!(t.hp.stable_dim(0), Some(1));
        let t2 = hc_hcminus_hp_dims(&alg(Preset::FullMatrix(2)), 2, 2).unwrap();
        assert_eq!(periodicity_check(&t2), PeriodicityVerdict::Inconclusive);
    }

    #[test]
    fn degree_zero_membership() {
        let dual = alg(Preset::DualNumbers);
        let mc = MixedComplex::new(&dual, 6).unwrap();
        let one = dual.unit().to_vec();
        let eps: Vec<Rational> =
            (0..2).map(|i| if one[i].is_zero() { Rational::one() } else { Rational::zero() }).collect();
        let r = degree_zero_classes(&mc, 2, std::slice::from_ref(&one)).unwrap();
        assert_eq!(r, ClassCheck { in_image: true, independent: 1 });
        let r = degree_zero_classes(&mc, 2, std::slice::from_ref(&eps)).unwrap();
        assert!(!r.in_image);
        assert!(degree_zero_classes(&mc, 0, &[eps]).unwrap().in_image);
        let m2 = alg(Preset::FullMatrix(2));
        let mc = MixedComplex::new(&m2, 4).unwrap();
        let e11: Vec<Rational> = m2.basis_vector(0);
        let r = degree_zero_classes(&mc, 2, &[m2.unit().to_vec(), e11]).unwrap();
        assert_eq!(r, ClassCheck { in_image: true, independent: 1 });
    }
}
