use super::{two_pi_i_pow, HodgeComplex, K};
use crate::linalg::{ChainComplex, FilteredComplex, Matrix};
use crate::{Error, Result};

/// `ℝ(j)`: rank one, `F^p` full for `p ≤ −j`, `phi = (i·t)^j`, pure of
/// weight `−2j`, `ι_R = (−1)^j`, `ι_C` = conjugation.
pub fn make_tate(j: i32) -> HodgeComplex {
    let c = ChainComplex::<K>::concentrated(0, 1);
    let sign = if j.rem_euclid(2) == 0 { K::one() } else { K::one().neg() };
    HodgeComplex::new(
        format!("ℝ({j})"),
        c.clone(),
        FilteredComplex::trivial(c.clone(), -j),
        vec![Matrix::scalar(1, two_pi_i_pow(j))],
        false,
    )
    .and_then(|h| h.with_weight(FilteredComplex::trivial(c.clone(), 2 * j), FilteredComplex::trivial(c, 2 * j)))
    .and_then(|h| h.with_iota(vec![Matrix::scalar(1, sign)], vec![Matrix::identity(1)]))
    .expect("Tate object is well formed")
}

/// `C(X_an)` for `X = Spec F` with `r1` real and `r2` pairs of complex
/// embeddings: `K^Σ` in degree 0, pure of weight 0 and type (0, 0); ι swaps
/// conjugate embeddings.
pub fn spec_field(r1: usize, r2: usize) -> Result<HodgeComplex> {
    let n = r1 + 2 * r2;
    if n == 0 {
        return Err(Error::EmptyVariety);
    }
    let mut perm = Matrix::<K>::zeros(n, n);
    for i in 0..r1 {
        perm.set(i, i, K::one());
    }
    for p in 0..r2 {
        let (a, b) = (r1 + 2 * p, r1 + 2 * p + 1);
        perm.set(a, b, K::one());
        perm.set(b, a, K::one());
    }
    let c = ChainComplex::<K>::concentrated(0, n);
    HodgeComplex::new(
        format!("Spec F ({r1},{r2})"),
        c.clone(),
        FilteredComplex::trivial(c.clone(), 0),
        vec![Matrix::identity(n)],
        false,
    )?
    .with_weight(FilteredComplex::trivial(c.clone(), 0), FilteredComplex::trivial(c, 0))?
    .with_iota(vec![perm.clone()], vec![perm])
}

/// `⊕_{0 ≤ i ≤ n} ℝ(−i)[−2i]`.
pub fn projective_space_complex(n: usize) -> HodgeComplex {
    (1..=n as i32).fold(make_tate(0), |acc, i| acc.direct_sum(&make_tate(-i).shift(-2 * i))).with_name(format!("ℙ^{n}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::{deligne_dims, deligne_dims_raw, kato_hom_complex};

    #[test]
    fn tate_examples() {
        let t0 = make_tate(0);
        assert_eq!(t0.phi(0).get(0, 0), &K::one());
        assert_eq!(t0.hodge().fil(0, 0).cols(), 1);
        assert_eq!(t0.hodge().fil(0, 1).cols(), 0);
        let t1 = make_tate(1);
        assert_eq!(t1.iota().unwrap().real.at(0).get(0, 0), &K::one().neg());
        let t2 = make_tate(2);
        let minus_t2 = crate::scalars::ConjField::standard().gen(0).pow(2).neg();
        assert_eq!(t2.phi(0).get(0, 0), &minus_t2);
        assert_eq!(t2.iota().unwrap().real.at(0).get(0, 0), &K::one());
    }

    #[test]
    fn twists_compose() {
        for a in -3..=3 {
            for b in -3..=3 {
                let x = make_tate(a).twist(b);
                let y = make_tate(a + b);
                assert_eq!(x.phi(0), y.phi(0));
                assert_eq!(x.hodge().fil(0, -(a + b)).cols(), 1);
                assert_eq!(x.hodge().fil(0, -(a + b) + 1).cols(), 0);
                let v = spec_field(1, 1).unwrap();
                let once = kato_hom_complex(&v.twist(a + b)).unwrap().betti();
                let twice = kato_hom_complex(&v.twist(a).twist(b)).unwrap().betti();
                assert_eq!(once, twice);
            }
        }
        assert_eq!(make_tate(0).twist(1).phi(0), make_tate(1).phi(0));
        let f = spec_field(1, 0).unwrap().twist(1);
        assert_eq!(f.hodge().fil(0, 0).cols(), 0);
    }

    #[test]
    fn tensor_examples() {
        let t = make_tate(1).tensor(&make_tate(1)).unwrap();
        assert_eq!(t.phi(0), make_tate(2).phi(0));
        let v = spec_field(0, 1).unwrap();
        let a = v.tensor(&make_tate(1)).unwrap();
        let b = v.twist(1);
        for j in -1..=2 {
            assert_eq!(deligne_dims(&a, j, -1..=2).unwrap(), deligne_dims(&b, j, -1..=2).unwrap());
            assert_eq!(deligne_dims_raw(&a, j, -1..=2).unwrap(), deligne_dims_raw(&b, j, -1..=2).unwrap());
        }
        let u = v.tensor(&make_tate(0)).unwrap();
        assert_eq!(deligne_dims(&u, 1, 0..=1).unwrap(), deligne_dims(&v, 1, 0..=1).unwrap());
    }

    #[test]
    fn projective_space() {
        let p0 = projective_space_complex(0);
        assert_eq!((p0.lo(), p0.hi()), (0, 0));
        let p2 = projective_space_complex(2);
        assert_eq!(p2.real().total_dim(), 3);
        assert_eq!((p2.real().dim(2), p2.real().dim(4)), (1, 1));
        assert_eq!(p2.hodge().fil(2, 1).cols(), 1);
        assert_eq!(p2.hodge().fil(2, 2).cols(), 0);
        assert!(p2.quasi_iso_audit());
    }

    #[test]
    fn empty_variety() {
        assert!(matches!(spec_field(0, 0), Err(Error::EmptyVariety)));
    }
}
