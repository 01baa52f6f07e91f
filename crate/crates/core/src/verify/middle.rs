use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;

use serde_json::{json, Value};

use super::ranks::{RankEntry, RankTable, RelativeTerm};
use crate::cyclic::{degree_zero_classes, tables_of, MixedComplex};
use crate::fdalgebra::{lift_idempotent, FactorData, FdAlgebra, WedderburnData};
use crate::hodge::{deligne_dims, spec_field, two_pi_i_pow, HodgeComplex};
use crate::linalg::{eigen_subcomplex, ChainComplex, Field, FilteredComplex, Matrix};
use crate::scalars::ConjElem as K;
use crate::scalars::Rational;
use crate::{Error, Result};

/// Margin on each side of `⌈n/2⌉` in the twist window.
pub const TWIST_MARGIN: i32 = 2;

/// Which evaluation of the middle term to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MiddlePath {
    Reduced,
    Direct,
    Both,
}

impl fmt::Display for MiddlePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MiddlePath::Reduced => "reduced",
            MiddlePath::Direct => "direct",
            MiddlePath::Both => "both",
        })
    }
}

impl std::str::FromStr for MiddlePath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reduced" => Ok(MiddlePath::Reduced),
            "direct" => Ok(MiddlePath::Direct),
            "both" => Ok(MiddlePath::Both),
            _ => Err(Error::Parse(format!("unknown path {s:?}; expected reduced, direct or both"))),
        }
    }
}

/// `ℚ^S[β, β⁻¹]`: one basis vector per simple factor of `A ⊗ ℂ` in every even
/// degree; ι permutes conjugate factors and sends `β` to `−β`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KstModel {
    pub s: usize,
    /// ι on `S`.
    pub perm: Vec<usize>,
    /// Simple factor of `Aˢˢ` owning each element of `S`.
    pub factor_of: Vec<usize>,
}

impl KstModel {
    pub fn new(w: &WedderburnData) -> Self {
        let mut perm = Vec::new();
        let mut factor_of = Vec::new();
        for (fi, f) in w.factors.iter().enumerate() {
            let base = perm.len();
            perm.extend(base..base + f.r1);
            for p in 0..f.r2 {
                let a = base + f.r1 + 2 * p;
                perm.extend([a + 1, a]);
            }
            factor_of.extend(std::iter::repeat_n(fi, f.r1 + 2 * f.r2));
        }
        KstModel { s: perm.len(), perm, factor_of }
    }

    pub fn dim(&self, degree: i32) -> usize {
        if degree.rem_euclid(2) == 0 {
            self.s
        } else {
            0
        }
    }

    /// ι on degree `2k`: the permutation times `(−1)^k`.
    pub fn iota(&self, k: i32) -> Matrix<Rational> {
        let sign = if k.rem_euclid(2) == 0 { Rational::one() } else { Rational::one().neg() };
        Matrix::from_fn(self.s, self.s, |i, j| if self.perm[j] == i { sign.clone() } else { Rational::zero() })
    }

    /// `dim` of the ι-fixed part in degree `2k`.
    pub fn fixed_dim(&self, k: i32) -> usize {
        let m = self.iota(k).sub(&Matrix::identity(self.s)).unwrap();
        self.s - m.rank()
    }

    pub fn to_json(&self) -> Value {
        json!({"s": self.s, "perm": self.perm, "factor_of": self.factor_of})
    }
}

fn twist_window(n: i32) -> RangeInclusive<i32> {
    let c = n.div_euclid(2) + n.rem_euclid(2);
    c - TWIST_MARGIN..=c + TWIST_MARGIN
}

/// REDUCED path: `Σ_f Σ_j dim H^{2j−n}` of the ι-fixed Deligne complex of
/// `spec_field(r1_f, r2_f)(j)`, plus the relative term.
pub fn middle_dims_reduced(w: &WedderburnData, rel: &RelativeTerm, degrees: RangeInclusive<i32>) -> Result<RankTable> {
    let mut cache: HashMap<(usize, usize, i32), crate::hodge::DimTable> = HashMap::new();
    let mut t = RankTable::new("middle (reduced)");
    for n in degrees {
        let mut total = 0;
        for f in &w.factors {
            for j in twist_window(n) {
                let key = (f.r1, f.r2, j);
                if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(key) {
                    let v = spec_field(f.r1, f.r2)?;
                    e.insert(deligne_dims(&v, j, -1..=2)?);
                }
                total += cache[&key].get(&(2 * j - n)).copied().unwrap_or(0);
            }
        }
        t.insert(n, RankEntry::computed(total, true).plus(rel.entry(n)));
    }
    Ok(t)
}

/// Center type of a factor on the DIRECT path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CenterKind {
    Rational,
    Gaussian,
}

/// `x² + bx + c` with `b² − 4c = −4s²` for rational `s`; returns `(b, s)`.
fn gaussian_form(f: &FactorData) -> Option<(Rational, Rational)> {
    if f.d != 2 {
        return None;
    }
    let (b, c) = (f.center_minpoly.coeff(1), f.center_minpoly.coeff(0));
    let lead = f.center_minpoly.coeff(2);
    let (b, c) = (&b / &lead, &c / &lead);
    let s2 = &c - &(&b * &b) / Rational::from_integer(4.into());
    if s2 <= Rational::zero() {
        return None;
    }
    let (n, d) = (s2.numer().sqrt(), s2.denom().sqrt());
    let s = Rational::new(n, d);
    (&s * &s == s2).then_some((b, s))
}

fn classify(w: &WedderburnData) -> Result<Vec<CenterKind>> {
    w.factors
        .iter()
        .map(|f| match f.d {
            1 => Ok(CenterKind::Rational),
            2 if gaussian_form(f).is_some() => {
                if w.is_semisimple() {
                    Ok(CenterKind::Gaussian)
                } else {
                    Err(Error::Unsupported("DIRECT path: ℚ(i) centers need a semisimple algebra".into()))
                }
            }
            _ => Err(Error::Unsupported(format!(
                "DIRECT path supports centers ℚ and ℚ(i); found a factor with center {}",
                f.center_minpoly
            ))),
        })
        .collect()
}

/// Representatives in `A` of the classes spanning `HP_0`: a lifted central
/// idempotent per factor, and for a ℚ(i) center also `J` with `J² = −e`.
fn degree_zero_representatives(a: &FdAlgebra, w: &WedderburnData, kinds: &[CenterKind]) -> Result<Vec<Vec<Rational>>> {
    let mut out = Vec::new();
    for (f, kind) in w.factors.iter().zip(kinds) {
        let e = lift_idempotent(a, &w.section.mul_vec(&f.idempotent))?;
        out.push(e.clone());
        if *kind == CenterKind::Gaussian {
            let (b, s) = gaussian_form(f).expect("classified as ℚ(i)");
            let half_b = &b / Rational::from_integer(2.into());
            let g = w.section.mul_vec(&f.center_generator);
            let j = a.scale(&(Rational::one() / &s), &a.add(&g, &a.scale(&half_b, &e)));
            if a.mul(&j, &j) != a.scale(&Rational::one().neg(), &e) {
                return Err(Error::Unsupported("center generator does not give J² = −e".into()));
            }
            out.push(j);
        }
    }
    Ok(out)
}

/// Truncation used for the cyclic input of the DIRECT path.
pub fn direct_truncation(w: &WedderburnData) -> usize {
    if w.is_semisimple() {
        4
    } else {
        6
    }
}

/// Degree-`2k` piece of the Hodge complex attached to the `HP` classes. The
/// real side is `K^st_{2k}` with basis `β^k·[σ]`, ι acting by the factor
/// permutation times `(−1)^k`; the complex side is `HP_{2k} ⊗ ℂ` in the
/// rational basis `(e_f; e_f, J_f)`, ι acting by conjugation of coordinates;
/// `phi = ch` sends `β^k·[σ]` to `(2πi)^k ε_σ` with `ε_± = (e ∓ iJ)/2`.
fn periodic_piece(kinds: &[CenterKind], k: i32) -> Result<HodgeComplex> {
    let s: usize = kinds.iter().map(|c| if *c == CenterKind::Rational { 1 } else { 2 }).sum();
    let half = K::from_rational(Rational::new(1.into(), 2.into()));
    let half_i = half.mul(&K::i());
    let mut ch = Matrix::<K>::zeros(s, s);
    let mut perm = Matrix::<K>::zeros(s, s);
    let mut at = 0;
    for kind in kinds {
        match kind {
            CenterKind::Rational => {
                ch.set(at, at, K::one());
                perm.set(at, at, K::one());
                at += 1;
            }
            CenterKind::Gaussian => {
                ch.set(at, at, half.clone());
                ch.set(at + 1, at, half_i.neg());
                ch.set(at, at + 1, half.clone());
                ch.set(at + 1, at + 1, half_i.clone());
                perm.set(at, at + 1, K::one());
                perm.set(at + 1, at, K::one());
                at += 2;
            }
        }
    }
    let sign = if k.rem_euclid(2) == 0 { K::one() } else { K::one().neg() };
    let c = ChainComplex::<K>::concentrated(0, s);
    HodgeComplex::new(
        format!("HP_{}", 2 * k),
        c.clone(),
        FilteredComplex::trivial(c.clone(), -k),
        vec![ch.scale(&two_pi_i_pow(k))],
        false,
    )?
    .with_weight(FilteredComplex::trivial(c.clone(), 2 * k), FilteredComplex::trivial(c, 2 * k))?
    .with_iota(vec![perm.scale(&sign)], vec![Matrix::identity(s)])
}

/// DIRECT path: the periodic classes of `A` are located in `HP_0` by the
/// `S`-tower, `F⁰` is read off the `HC⁻ → HP` image, and the ι-fixed Kato
/// complex of `⊕_k V_{2k}[2k]` is evaluated; the relative term is added.
pub fn middle_dims_direct(
    a: &FdAlgebra,
    w: &WedderburnData,
    rel: &RelativeTerm,
    degrees: RangeInclusive<i32>,
) -> Result<RankTable> {
    let kinds = classify(w)?;
    let reps = degree_zero_representatives(a, w, &kinds)?;
    let n = direct_truncation(w);
    let mc = MixedComplex::new(a, n)?;
    let (_, tables) = tables_of(&mc, n / 2 + 1);
    let stable = |deg: i32| {
        tables.hp.stable_dim(deg).ok_or_else(|| Error::Unsupported(format!("HP_{deg} not stable at truncation {n}")))
    };
    let (hp0, hp1, hp2) = (stable(0)?, stable(1)?, stable(2)?);
    let check = degree_zero_classes(&mc, n / 2, &reps)?;
    if !check.in_image || check.independent != reps.len() || hp0 != reps.len() {
        return Err(Error::Unsupported(format!(
            "idempotent classes do not form a basis of HP_0 (in image: {}, rank {}, HP_0 = {hp0})",
            check.in_image, check.independent
        )));
    }
    if hp1 != 0 || hp2 != hp0 {
        return Err(Error::Unsupported(format!("HP is not concentrated in even degrees (HP_1 = {hp1}, HP_2 = {hp2})")));
    }
    // F⁰ on HP_{2k}: image of HC⁻_{2k}, of dimension HP_{2k} − HP_{2k−2} for k ≥ 1.
    if hp2 - hp0 != 0 {
        return Err(Error::Unsupported("HC⁻ image in HP_2 is nonzero".into()));
    }
    let (lo, hi) = (*degrees.start(), *degrees.end());
    let k_lo = *twist_window(lo).start();
    let k_hi = *twist_window(hi).end();
    let v = (k_lo..=k_hi)
        .map(|k| periodic_piece(&kinds, k).map(|p| p.shift(2 * k)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .reduce(|x, y| x.direct_sum(&y))
        .expect("nonempty window");
    let h = deligne_dims(&v, 0, -hi..=-lo)?;
    let mut t = RankTable::new("middle (direct)");
    for deg in degrees {
        t.insert(deg, RankEntry::computed(h[&-deg], true).plus(rel.entry(deg)));
    }
    Ok(t)
}

/// ι-fixed dimension of a matrix involution, for cross-checks.
pub fn fixed_dim_of(m: &Matrix<Rational>) -> usize {
    let c = ChainComplex::<Rational>::concentrated(0, m.rows());
    eigen_subcomplex(&c, std::slice::from_ref(m), &Rational::one()).dim(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalgebra::{factor_data, parse_preset};

    fn setup(p: &str) -> (FdAlgebra, WedderburnData, RelativeTerm) {
        let a = crate::fdalgebra::preset(&parse_preset(p).unwrap()).unwrap();
        let w = factor_data(&a, 0).unwrap();
        let rel = RelativeTerm::compute(&a, &w, 9, 6).unwrap();
        (a, w, rel)
    }

    #[test]
    fn kst_model() {
        let (_, w, _) = setup("product:number_field:x^2+1;rational");
        let m = KstModel::new(&w);
        assert_eq!(m.s, 3);
        for k in -2..=2 {
            let j = m.iota(k);
            assert_eq!(j.mul(&j).unwrap(), Matrix::identity(3));
            assert_eq!(m.fixed_dim(k), fixed_dim_of(&j));
        }
        assert_eq!(m.dim(3), 0);
        assert_eq!(m.dim(-2), 3);
    }

    #[test]
    fn reduced_examples() {
        let (_, w, rel) = setup("rational");
        let q = middle_dims_reduced(&w, &rel, -2..=9).unwrap();
        assert_eq!(q.value(5), Some(1));
        let (_, w2, rel2) = setup("product:rational;rational");
        let qq = middle_dims_reduced(&w2, &rel2, -2..=9).unwrap();
        for (n, e) in qq.entries() {
            assert_eq!(e.value(), 2 * q.value(n).unwrap(), "degree {n}");
        }
        let (_, wm, relm) = setup("full_matrix:2");
        assert_eq!(middle_dims_reduced(&wm, &relm, -2..=9).unwrap().values(), q.values());
    }

    #[test]
    fn direct_matches_reduced() {
        for p in ["rational", "product:rational;rational", "number_field:x^2+1", "dual_numbers", "full_matrix:2"] {
            let (a, w, rel) = setup(p);
            let r = middle_dims_reduced(&w, &rel, -2..=9).unwrap();
            let d = middle_dims_direct(&a, &w, &rel, -2..=9).unwrap();
            assert_eq!(r.values(), d.values(), "{p}");
        }
    }

    #[test]
    fn direct_unsupported() {
        let (a, w, rel) = setup("number_field:x^2-2");
        assert!(matches!(middle_dims_direct(&a, &w, &rel, 0..=3), Err(Error::Unsupported(_))));
    }
}
