use std::fmt;

use serde_json::{json, Value};

use super::homs::intersect;
use super::{HodgeComplex, K};
use crate::linalg::{canonical_span, Matrix};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PurityVerdict {
    Pass,
    Fail { degree: i32, weight: i32, p: i32 },
}

impl PurityVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, PurityVerdict::Pass)
    }

    pub fn to_json(&self) -> Value {
        match self {
            PurityVerdict::Pass => json!({"verdict": "PASS"}),
            PurityVerdict::Fail { degree, weight, p } => {
                json!({"verdict": "FAIL", "degree": degree, "weight": weight, "p": p})
            }
        }
    }
}

impl fmt::Display for PurityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PurityVerdict::Pass => write!(f, "PASS"),
            PurityVerdict::Fail { degree, weight, p } => write!(f, "FAIL at degree {degree}, weight {weight}, p = {p}"),
        }
    }
}

fn sum(a: &Matrix<K>, b: &Matrix<K>) -> Matrix<K> {
    canonical_span(&a.hstack(b).unwrap())
}

/// Checks `gr^W_n H^k = F^p ⊕ conj(F^q)` for all `p + q = n + 1`, with the
/// filtrations induced on cohomology and conjugation transported by `phi`.
pub fn pure_weight_check(v: &HodgeComplex) -> Result<PurityVerdict> {
    let w = v.weight().ok_or(Error::WeightMissing)?;
    let c = v.hodge().complex();
    let (f_lo, f_hi) = v.hodge().p_range();
    let (g_lo, g_hi) = w.complex.p_range();
    for k in v.lo()..=v.hi() {
        let n_k = c.dim(k);
        if n_k == 0 {
            continue;
        }
        let phi = v.phi(k);
        let phi_inv =
            phi.inverse().ok_or_else(|| Error::Unsupported(format!("phi is not invertible in degree {k}")))?;
        let conj_sub = |x: &Matrix<K>| phi.mul(&phi_inv.mul(x).unwrap().conj()).unwrap();
        let z = c.diff(k).to_dense().kernel();
        let b = c.diff(k - 1).to_dense().column_basis();
        let on_h = |x: &Matrix<K>| sum(&intersect(x, &z), &b);
        let span = |x: &Matrix<K>| canonical_span(x).cols();
        let reach = f_lo.abs() + f_hi.abs() + g_lo.abs() + g_hi.abs() + 2;
        for n in -g_hi - 1..=-g_lo + 1 {
            let wn = on_h(&w.complex.fil(k, -n));
            let wn1 = on_h(&w.complex.fil(k, -n + 1));
            let (dw, dw1) = (wn.cols(), wn1.cols());
            for p in -reach..=reach {
                let q = n + 1 - p;
                let fp = sum(&intersect(&on_h(&v.hodge().fil(k, p)), &wn), &wn1);
                let fq = sum(&intersect(&conj_sub(&on_h(&v.hodge().fil(k, q))), &wn), &wn1);
                let total = span(&fp.hstack(&fq).unwrap());
                if total != dw || fp.cols() + fq.cols() - 2 * dw1 != dw - dw1 {
                    return Ok(PurityVerdict::Fail { degree: k, weight: n, p });
                }
            }
        }
    }
    Ok(PurityVerdict::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::{make_tate, projective_space_complex, spec_field};
    use crate::linalg::{ChainComplex, FilteredComplex};

    #[test]
    fn purity_examples() {
        for j in -3..=3 {
            assert!(pure_weight_check(&make_tate(j)).unwrap().passed(), "ℝ({j})");
        }
        assert!(pure_weight_check(&spec_field(2, 1).unwrap()).unwrap().passed());
        assert!(pure_weight_check(&projective_space_complex(2)).unwrap().passed());
        let c = ChainComplex::<K>::concentrated(0, 1);
        let bad = HodgeComplex::new(
            "F¹ full",
            c.clone(),
            FilteredComplex::trivial(c.clone(), 1),
            vec![Matrix::identity(1)],
            false,
        )
        .unwrap()
        .with_weight(FilteredComplex::trivial(c.clone(), 0), FilteredComplex::trivial(c, 0))
        .unwrap();
        assert!(matches!(pure_weight_check(&bad).unwrap(), PurityVerdict::Fail { degree: 0, weight: 0, .. }));
    }
}
