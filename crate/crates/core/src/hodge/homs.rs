use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use super::{HodgeComplex, K};
use crate::linalg::{
    eigen_subcomplex, realify_from_real, realify_linear, realify_semilinear, restrict_scalars, Bicomplex, ChainComplex,
    ChainMap, Matrix, SparseMatrix,
};
use crate::{Error, Result};

/// Dimension by cohomological degree.
pub type DimTable = BTreeMap<i32, usize>;

/// Subcomplex spanned per degree by the columns of `bases[k − lo]`.
fn restrict_to(c: &ChainComplex<K>, bases: &[Matrix<K>]) -> ChainComplex<K> {
    let (lo, hi) = (c.lo(), c.hi());
    let d = (lo..hi)
        .map(|k| {
            let (s, t) = (&bases[(k - lo) as usize], &bases[(k - lo + 1) as usize]);
            let img = c.diff(k).to_dense().mul(s).unwrap();
            SparseMatrix::from_dense(&t.solve(&img).expect("basis spans a subcomplex"))
        })
        .collect();
    ChainComplex::new(lo, bases.iter().map(Matrix::cols).collect(), d).expect("subcomplex")
}

/// Basis of `span(a) ∩ span(b)`.
pub(crate) fn intersect(a: &Matrix<K>, b: &Matrix<K>) -> Matrix<K> {
    if a.cols() == 0 || b.cols() == 0 {
        return Matrix::zeros(a.rows(), 0);
    }
    let ker = a.hstack(&b.neg()).unwrap().kernel();
    let top = ker.select_rows(&(0..a.cols()).collect::<Vec<_>>());
    a.mul(&top).unwrap().column_basis()
}

/// Matrix of a conjugate-linear map `v ↦ J σ(v)` on the subspace spanned by `e`.
fn restrict_semilinear(j: &Matrix<K>, e: &Matrix<K>) -> Matrix<K> {
    e.solve(&j.mul(&e.conj()).unwrap()).expect("ι preserves the subspace")
}

fn restrict_linear(j: &Matrix<K>, e: &Matrix<K>) -> Matrix<K> {
    e.solve(&j.mul(e).unwrap()).expect("ι preserves the subspace")
}

/// `R ⊕ S → C`, `(v, w) ↦ phi(v) − incl(w)`, over `K₀`.
struct TwoColumn {
    real: ChainComplex<K>,
    sub: ChainComplex<K>,
    incl: Vec<Matrix<K>>,
    target: ChainComplex<K>,
    phi: Vec<Matrix<K>>,
    /// `(ι on R, ι on S in S-coordinates, ι on C)`, semilinear on `S` and `C`.
    iota: Option<IotaParts>,
}

type IotaParts = (Vec<Matrix<K>>, Vec<Matrix<K>>, Vec<Matrix<K>>);

impl TwoColumn {
    fn total(&self, fixed: bool) -> Result<ChainComplex<K>> {
        let lo = self.real.lo();
        let col0 = self.real.direct_sum(&restrict_scalars(&self.sub));
        let col1 = restrict_scalars(&self.target);
        let h = (lo..=self.real.hi())
            .map(|k| {
                let i = (k - lo) as usize;
                let m = realify_from_real(&self.phi[i]).hstack(&realify_linear(&self.incl[i]).neg()).unwrap();
                (k, SparseMatrix::from_dense(&m))
            })
            .collect();
        let hmap = ChainMap::new(col0.clone(), col1.clone(), h)?;
        let total = Bicomplex::new(0, vec![col0.clone(), col1.clone()], vec![hmap])?.total()?;
        if !fixed {
            return Ok(total);
        }
        let (jr, js, jc) = self.iota.as_ref().ok_or_else(|| Error::Involution("no ι-structure".into()))?;
        let at = |v: &[Matrix<K>], k: i32| -> Option<Matrix<K>> {
            (k >= lo && k <= self.real.hi()).then(|| v[(k - lo) as usize].clone())
        };
        let mats: Vec<Matrix<K>> = (total.lo()..=total.hi())
            .map(|n| {
                let c0 = match (at(jr, n), at(js, n)) {
                    (Some(a), Some(b)) => Matrix::block_diag(&[&a, &realify_semilinear(&b)]),
                    _ => Matrix::zeros(col0.dim(n), col0.dim(n)),
                };
                let c1 = at(jc, n - 1).map(|c| realify_semilinear(&c)).unwrap_or_else(|| Matrix::zeros(0, 0));
                Matrix::block_diag(&[&c0, &c1])
            })
            .collect();
        Ok(eigen_subcomplex(&total, &mats, &K::one()))
    }
}

fn kato_data(v: &HodgeComplex) -> TwoColumn {
    let (sub, incl) = v.hodge().sub_complex(0);
    let degrees: Vec<i32> = (v.lo()..=v.hi()).collect();
    let iota = v.iota().map(|i| {
        (
            degrees.iter().map(|&k| i.real.at(k).clone()).collect(),
            degrees.iter().map(|&k| restrict_semilinear(i.complex.at(k), &incl[(k - v.lo()) as usize])).collect(),
            degrees.iter().map(|&k| i.complex.at(k).clone()).collect(),
        )
    });
    TwoColumn {
        real: v.real().clone(),
        sub,
        incl,
        target: v.hodge().complex().clone(),
        phi: degrees.iter().map(|&k| v.phi(k).clone()).collect(),
        iota,
    }
}

fn beilinson_data(v: &HodgeComplex) -> Result<TwoColumn> {
    let w = v.weight().ok_or(Error::WeightMissing)?;
    let (real, br) = w.real.sub_complex(0);
    let (target, bc) = w.complex.sub_complex(0);
    let degrees: Vec<i32> = (v.lo()..=v.hi()).collect();
    let idx = |k: i32| (k - v.lo()) as usize;
    // F⁰ ∩ W₀ in W₀-coordinates
    let sub_bases: Vec<Matrix<K>> = degrees
        .iter()
        .map(|&k| {
            let x = intersect(&v.hodge().fil(k, 0), &bc[idx(k)]);
            bc[idx(k)].solve(&x).expect("intersection lies in W₀")
        })
        .collect();
    let sub = restrict_to(&target, &sub_bases);
    let phi = degrees
        .iter()
        .map(|&k| bc[idx(k)].solve(&v.phi(k).mul(&br[idx(k)]).unwrap()).expect("phi respects W"))
        .collect();
    let iota = v.iota().map(|i| {
        let jc: Vec<Matrix<K>> = degrees.iter().map(|&k| restrict_semilinear(i.complex.at(k), &bc[idx(k)])).collect();
        (
            degrees.iter().map(|&k| restrict_linear(i.real.at(k), &br[idx(k)])).collect(),
            degrees.iter().map(|&k| restrict_semilinear(&jc[idx(k)], &sub_bases[idx(k)])).collect(),
            jc,
        )
    });
    Ok(TwoColumn { real, sub, incl: sub_bases, target, phi, iota })
}

/// Total complex of `V_R ⊕ F⁰V_C → V_C` over `K₀`.
pub fn kato_hom_complex(v: &HodgeComplex) -> Result<ChainComplex<K>> {
    kato_data(v).total(false)
}

/// The same with ι-invariants taken first.
pub fn kato_hom_complex_iota(v: &HodgeComplex) -> Result<ChainComplex<K>> {
    kato_data(v).total(true)
}

/// Total complex of `W₀V_R ⊕ (F⁰ ∩ W₀)V_C → W₀V_C` over `K₀`.
pub fn beilinson_hom_complex(v: &HodgeComplex) -> Result<ChainComplex<K>> {
    beilinson_data(v)?.total(false)
}

pub fn beilinson_hom_complex_iota(v: &HodgeComplex) -> Result<ChainComplex<K>> {
    beilinson_data(v)?.total(true)
}

fn table(c: &ChainComplex<K>, degrees: RangeInclusive<i32>) -> DimTable {
    degrees.map(|i| (i, if i < c.lo() || i > c.hi() { 0 } else { c.cohomology_dim(i).unwrap() })).collect()
}

/// ι-fixed Deligne cohomology of `V(j)`.
pub fn deligne_dims(v: &HodgeComplex, j: i32, degrees: RangeInclusive<i32>) -> Result<DimTable> {
    Ok(table(&kato_hom_complex_iota(&v.twist(j))?, degrees))
}

/// Deligne cohomology of `V(j)` before taking ι-invariants.
pub fn deligne_dims_raw(v: &HodgeComplex, j: i32, degrees: RangeInclusive<i32>) -> Result<DimTable> {
    Ok(table(&kato_hom_complex(&v.twist(j))?, degrees))
}

/// Absolute Hodge cohomology of `V(j)`; ι-fixed when `V` carries ι.
pub fn abs_hodge_dims(v: &HodgeComplex, j: i32, degrees: RangeInclusive<i32>) -> Result<DimTable> {
    let t = v.twist(j);
    let c = if t.iota().is_some() { beilinson_hom_complex_iota(&t)? } else { beilinson_hom_complex(&t)? };
    Ok(table(&c, degrees))
}

pub fn abs_hodge_dims_raw(v: &HodgeComplex, j: i32, degrees: RangeInclusive<i32>) -> Result<DimTable> {
    Ok(table(&beilinson_hom_complex(&v.twist(j))?, degrees))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::{make_tate, spec_field};
    use crate::linalg::FilteredComplex;

    fn h(c: &ChainComplex<K>, i: i32) -> usize {
        table(c, i..=i)[&i]
    }

    #[test]
    fn kato_calibration() {
        let r0 = kato_hom_complex(&make_tate(0)).unwrap();
        assert_eq!((h(&r0, 0), h(&r0, 1)), (1, 0));
        let r1 = kato_hom_complex(&make_tate(1)).unwrap();
        assert_eq!((h(&r1, 0), h(&r1, 1)), (0, 1));
        let r1i = kato_hom_complex_iota(&make_tate(1)).unwrap();
        assert_eq!((h(&r1i, 0), h(&r1i, 1)), (0, 1));
        // ℝ(2): the real line of V_C is the image of the real line of V_R
        let r2i = kato_hom_complex_iota(&make_tate(2)).unwrap();
        assert_eq!(h(&r2i, 1), 0);
        assert_eq!(h(&kato_hom_complex(&make_tate(2)).unwrap(), 1), 1);
    }

    #[test]
    fn deligne_point_table() {
        for (r1, r2) in [(1, 0), (0, 1), (2, 0), (1, 1)] {
            let x = spec_field(r1, r2).unwrap();
            for j in 1..=4 {
                let want = if j % 2 == 1 { r1 + r2 } else { r2 };
                assert_eq!(deligne_dims(&x, j, 1..=1).unwrap()[&1], want, "({r1},{r2}) j={j}");
                assert_eq!(deligne_dims(&x, j, 0..=0).unwrap()[&0], 0);
            }
            assert_eq!(deligne_dims(&x, 0, 0..=1).unwrap(), [(0, r1 + r2), (1, 0)].into());
        }
        assert_eq!(deligne_dims(&spec_field(0, 1).unwrap(), 2, 1..=1).unwrap()[&1], 1);
    }

    #[test]
    fn beilinson_examples() {
        let b = beilinson_hom_complex(&make_tate(0)).unwrap();
        assert_eq!(h(&b, 0), 1);
        let x = spec_field(1, 0).unwrap();
        assert_eq!(abs_hodge_dims(&x, 0, 0..=0).unwrap()[&0], 1);
        assert_eq!(abs_hodge_dims(&x, 1, 3..=3).unwrap()[&3], 0);
        assert_eq!(abs_hodge_dims(&x, 3, 1..=1).unwrap(), deligne_dims(&x, 3, 1..=1).unwrap());
        // weight 0 with F¹ full: F⁰ ∩ W₀ is still everything and H⁰ survives
        let c = ChainComplex::<K>::concentrated(0, 1);
        let v = HodgeComplex::new(
            "F¹ full",
            c.clone(),
            FilteredComplex::trivial(c.clone(), 1),
            vec![Matrix::identity(1)],
            false,
        )
        .unwrap()
        .with_weight(FilteredComplex::trivial(c.clone(), 0), FilteredComplex::trivial(c, 0))
        .unwrap();
        assert_eq!(h(&beilinson_hom_complex(&v).unwrap(), 0), 1);
    }

    #[test]
    fn iota_splits_dimensions() {
        for j in -2..=3 {
            let v = spec_field(1, 1).unwrap().twist(j);
            let raw = kato_hom_complex(&v).unwrap();
            let fixed = kato_hom_complex_iota(&v).unwrap();
            for k in raw.lo()..=raw.hi() {
                assert!(fixed.dim(k) <= raw.dim(k));
            }
        }
    }

    #[test]
    fn missing_weight() {
        let c = ChainComplex::<K>::concentrated(0, 1);
        let v = HodgeComplex::new("bare", c.clone(), FilteredComplex::trivial(c, 0), vec![Matrix::identity(1)], false)
            .unwrap();
        assert!(matches!(beilinson_hom_complex(&v), Err(Error::WeightMissing)));
    }
}
