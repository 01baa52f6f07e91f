//! Rational functions over ℚ(i) in finitely many formal generators, each
//! tagged real or imaginary. Complex conjugation `σ` fixes real generators
//! and negates imaginary ones together with `i`.
//!
//! The default field [`ConjField::standard`] has one real generator `t`
//! standing for `2π`; the formal `2πi` is then `i·t`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::{Error, Result};

/// Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussQ {
    pub re: Rational,
    pub im: Rational,
}

impl GaussQ {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussQ { re, im }
    }
    pub fn real(re: Rational) -> Self {
        GaussQ { re, im: Rational::zero() }
    }
    pub fn i() -> Self {
        GaussQ { re: Rational::zero(), im: Rational::one() }
    }
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn one() -> Self {
        Self::real(Rational::one())
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn add(&self, o: &Self) -> Self {
        GaussQ { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    pub fn sub(&self, o: &Self) -> Self {
        GaussQ { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    pub fn neg(&self) -> Self {
        GaussQ { re: -&self.re, im: -&self.im }
    }
    pub fn mul(&self, o: &Self) -> Self {
        GaussQ { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
    pub fn conj(&self) -> Self {
        GaussQ { re: self.re.clone(), im: -&self.im }
    }
    pub fn inv(&self) -> Option<Self> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(GaussQ { re: &self.re / &n, im: -&self.im / &n })
    }
}

impl fmt::Debug for GaussQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.re)),
            (true, false) => write!(f, "{}i", format_rational(&self.im)),
            _ => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({}{}{}i)", format_rational(&self.re), sign, format_rational(&self.im.abs()))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reality {
    Real,
    Imaginary,
}

/// Generator list of a formal conjugation-closed field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConjField {
    gens: Vec<(String, Reality)>,
}

impl ConjField {
    pub fn new(gens: Vec<(String, Reality)>) -> Arc<Self> {
        Arc::new(ConjField { gens })
    }

    /// ℚ(i)(t) with `t` real.
    pub fn standard() -> Arc<Self> {
        Self::new(vec![("t".into(), Reality::Real)])
    }

    pub fn generators(&self) -> &[(String, Reality)] {
        &self.gens
    }

    pub fn gen(self: &Arc<Self>, idx: usize) -> ConjElem {
        assert!(idx < self.gens.len(), "generator index out of range");
        let mut mono = vec![0u32; idx + 1];
        mono[idx] = 1;
        let mut num = BTreeMap::new();
        num.insert(mono, GaussQ::one());
        ConjElem { field: Some(self.clone()), num, den: poly_one() }
    }

    /// The formal `2πi = i·t` of the standard field.
    pub fn two_pi_i(self: &Arc<Self>) -> ConjElem {
        self.gen(0).mul_gauss(&GaussQ::i())
    }
}

type Mono = Vec<u32>;
type MPoly = BTreeMap<Mono, GaussQ>;

fn poly_one() -> MPoly {
    let mut p = BTreeMap::new();
    p.insert(Vec::new(), GaussQ::one());
    p
}

fn trim_mono(mut m: Mono) -> Mono {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &[u32], b: &[u32]) -> Mono {
    let n = a.len().max(b.len());
    trim_mono((0..n).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect())
}

fn p_add(a: &MPoly, b: &MPoly) -> MPoly {
    let mut out = a.clone();
    for (m, c) in b {
        let e = out.entry(m.clone()).or_default();
        *e = e.add(c);
        if e.is_zero() {
            out.remove(m);
        }
    }
    out
}

fn p_neg(a: &MPoly) -> MPoly {
    a.iter().map(|(m, c)| (m.clone(), c.neg())).collect()
}

fn p_mul(a: &MPoly, b: &MPoly) -> MPoly {
    let mut out: MPoly = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = mono_mul(ma, mb);
            let e = out.entry(m.clone()).or_default();
            *e = e.add(&ca.mul(cb));
            if e.is_zero() {
                out.remove(&m);
            }
        }
    }
    out
}

fn p_scale(a: &MPoly, c: &GaussQ) -> MPoly {
    if c.is_zero() {
        return BTreeMap::new();
    }
    a.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect()
}

/// Variables occurring in `a`.
fn vars(a: &MPoly) -> Vec<usize> {
    let mut v: Vec<usize> =
        a.keys().flat_map(|m| m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn to_dense(a: &MPoly, var: usize) -> Vec<GaussQ> {
    let deg = a.keys().map(|m| m.get(var).copied().unwrap_or(0)).max().unwrap_or(0) as usize;
    let mut out = vec![GaussQ::zero(); deg + 1];
    for (m, c) in a {
        out[m.get(var).copied().unwrap_or(0) as usize] = c.clone();
    }
    out
}

fn from_dense(d: &[GaussQ], var: usize) -> MPoly {
    d.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| {
            let mut m = vec![0u32; var + 1];
            m[var] = e as u32;
            (trim_mono(m), c.clone())
        })
        .collect()
}

fn dense_trim(mut a: Vec<GaussQ>) -> Vec<GaussQ> {
    while a.last().is_some_and(GaussQ::is_zero) {
        a.pop();
    }
    a
}

fn dense_div_rem(a: &[GaussQ], b: &[GaussQ]) -> (Vec<GaussQ>, Vec<GaussQ>) {
    let db = b.len() - 1;
    let inv = b[db].inv().unwrap();
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), dense_trim(rem));
    }
    let mut q = vec![GaussQ::zero(); rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db].mul(&inv);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(bj));
            }
        }
        q[k] = c;
    }
    rem.truncate(db);
    (dense_trim(q), dense_trim(rem))
}

fn dense_gcd(a: &[GaussQ], b: &[GaussQ]) -> Vec<GaussQ> {
    let (mut a, mut b) = (dense_trim(a.to_vec()), dense_trim(b.to_vec()));
    while !b.is_empty() {
        let r = dense_div_rem(&a, &b).1;
        a = b;
        b = r;
    }
    a
}

/// Element of a [`ConjField`]: a reduced fraction `num / den`.
///
/// Elements built from rationals and `i` alone carry no field and combine
/// with elements of any field.
#[derive(Clone)]
pub struct ConjElem {
    field: Option<Arc<ConjField>>,
    num: MPoly,
    den: MPoly,
}

impl ConjElem {
    pub fn zero() -> Self {
        ConjElem { field: None, num: BTreeMap::new(), den: poly_one() }
    }

    pub fn one() -> Self {
        Self::from_gauss(GaussQ::one())
    }

    pub fn i() -> Self {
        Self::from_gauss(GaussQ::i())
    }

    pub fn from_gauss(c: GaussQ) -> Self {
        let mut num = BTreeMap::new();
        if !c.is_zero() {
            num.insert(Vec::new(), c);
        }
        ConjElem { field: None, num, den: poly_one() }
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::from_gauss(GaussQ::real(q))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn field(&self) -> Option<&Arc<ConjField>> {
        self.field.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// The value as a Gaussian rational, if it is constant.
    pub fn as_gauss(&self) -> Option<GaussQ> {
        if self.is_zero() {
            return Some(GaussQ::zero());
        }
        let n = self.num.get(&Vec::new())?;
        let d = self.den.get(&Vec::new())?;
        (self.num.len() == 1 && self.den.len() == 1).then(|| n.mul(&d.inv().unwrap()))
    }

    fn merge_field(&self, o: &Self) -> Result<Option<Arc<ConjField>>> {
        match (&self.field, &o.field) {
            (None, f) | (f, None) => Ok(f.clone()),
            (Some(a), Some(b)) if Arc::ptr_eq(a, b) || a == b => Ok(Some(a.clone())),
            (Some(a), Some(b)) => Err(Error::FieldMismatch(format!("{:?} vs {:?}", a.generators(), b.generators()))),
        }
    }

    fn build(field: Option<Arc<ConjField>>, num: MPoly, den: MPoly) -> Self {
        let mut e = ConjElem { field, num, den };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.num.is_empty() {
            self.den = poly_one();
            return;
        }
        // common monomial content
        let width = self.num.keys().chain(self.den.keys()).map(Vec::len).max().unwrap_or(0);
        let mut common = vec![u32::MAX; width];
        for m in self.num.keys().chain(self.den.keys()) {
            for (i, c) in common.iter_mut().enumerate() {
                *c = (*c).min(m.get(i).copied().unwrap_or(0));
            }
        }
        if common.iter().any(|&c| c > 0) {
            let strip = |p: &MPoly| -> MPoly {
                p.iter()
                    .map(|(m, c)| {
                        let m2 = (0..width).map(|i| m.get(i).copied().unwrap_or(0) - common[i]).collect();
                        (trim_mono(m2), c.clone())
                    })
                    .collect()
            };
            self.num = strip(&self.num);
            self.den = strip(&self.den);
        }
        // univariate gcd cancellation
        let mut vs = vars(&self.num);
        vs.extend(vars(&self.den));
        vs.sort_unstable();
        vs.dedup();
        if vs.len() == 1 && !vars(&self.den).is_empty() {
            let v = vs[0];
            let (n, d) = (to_dense(&self.num, v), to_dense(&self.den, v));
            let g = dense_gcd(&n, &d);
            if g.len() > 1 {
                self.num = from_dense(&dense_div_rem(&n, &g).0, v);
                self.den = from_dense(&dense_div_rem(&d, &g).0, v);
            }
        }
        // leading coefficient of the denominator is one
        let lead = self.den.values().next_back().unwrap().inv().unwrap();
        if lead != GaussQ::one() {
            self.num = p_scale(&self.num, &lead);
            self.den = p_scale(&self.den, &lead);
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        let f = self.merge_field(o)?;
        if self.den == o.den {
            return Ok(Self::build(f, p_add(&self.num, &o.num), self.den.clone()));
        }
        let num = p_add(&p_mul(&self.num, &o.den), &p_mul(&o.num, &self.den));
        Ok(Self::build(f, num, p_mul(&self.den, &o.den)))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        let f = self.merge_field(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::build(f, p_mul(&self.num, &o.num), p_mul(&self.den, &o.den)))
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::build(self.field.clone(), self.den.clone(), self.num.clone()))
    }

    pub fn try_eq(&self, o: &Self) -> Result<bool> {
        self.merge_field(o)?;
        Ok(p_mul(&self.num, &o.den) == p_mul(&o.num, &self.den))
    }

    pub fn neg(&self) -> Self {
        ConjElem { field: self.field.clone(), num: p_neg(&self.num), den: self.den.clone() }
    }

    pub fn mul_gauss(&self, c: &GaussQ) -> Self {
        Self::build(self.field.clone(), p_scale(&self.num, c), self.den.clone())
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.try_inv().expect("inverse of zero") } else { self.clone() };
        (0..e.unsigned_abs()).fold(Self::one(), |acc, _| acc.try_mul(&base).unwrap())
    }

    fn conj_poly(&self, p: &MPoly) -> MPoly {
        p.iter()
            .map(|(m, c)| {
                let flips: u32 = m
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| self.field.as_ref().is_some_and(|f| f.gens[*i].1 == Reality::Imaginary))
                    .map(|(_, e)| *e)
                    .sum();
                let c = c.conj();
                (m.clone(), if flips % 2 == 1 { c.neg() } else { c })
            })
            .collect()
    }

    /// Complex conjugation `σ`.
    pub fn conj(&self) -> Self {
        Self::build(self.field.clone(), self.conj_poly(&self.num), self.conj_poly(&self.den))
    }

    pub fn is_real(&self) -> bool {
        self.try_eq(&self.conj()).unwrap()
    }

    /// `(x + σx)/2`
    pub fn re(&self) -> Self {
        self.try_add(&self.conj()).unwrap().mul_gauss(&GaussQ::real(Rational::new(1.into(), 2.into())))
    }

    /// `(x − σx)/(2i)`, so that `x = re + i·im` with both parts real.
    pub fn im(&self) -> Self {
        self.try_add(&self.conj().neg())
            .unwrap()
            .mul_gauss(&GaussQ::new(Rational::zero(), Rational::new((-1).into(), 2.into())))
    }

    fn fmt_poly(&self, p: &MPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if p.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in p.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = self.field.as_ref().map(|fl| fl.gens[i].0.clone()).unwrap_or_else(|| format!("g{i}"));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c:?}")?;
            } else if *c == GaussQ::one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{c:?}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl PartialEq for ConjElem {
    fn eq(&self, o: &Self) -> bool {
        self.try_eq(o).unwrap_or(false)
    }
}

impl fmt::Debug for ConjElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ConjElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den_one = self.den == poly_one();
        if den_one {
            return self.fmt_poly(&self.num, f);
        }
        write!(f, "(")?;
        self.fmt_poly(&self.num, f)?;
        write!(f, ")/(")?;
        self.fmt_poly(&self.den, f)?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn examples() {
        let k = ConjField::standard();
        let t = k.gen(0);
        let it = k.two_pi_i();
        assert_eq!(it.conj(), it.neg());
        assert!(t.try_mul(&t).unwrap().is_real());
        assert!(!it.is_real());
        let q = ConjElem::from_rational(rat(2, 3));
        assert_eq!(q.try_inv().unwrap(), ConjElem::from_rational(rat(3, 2)));
        assert_eq!(ConjElem::zero().try_inv(), Err(Error::DivisionByZero));
        // (i t)^2 = -t^2
        assert_eq!(it.pow(2), t.pow(2).neg());
    }

    #[test]
    fn reduction_and_mismatch() {
        let k = ConjField::standard();
        let t = k.gen(0);
        let one = ConjElem::one();
        // (t^2 - 1)/(t - 1) = t + 1
        let a = t.pow(2).try_add(&one.neg()).unwrap();
        let b = t.try_add(&one.neg()).unwrap();
        let q = a.try_mul(&b.try_inv().unwrap()).unwrap();
        assert_eq!(q.to_string(), t.try_add(&one).unwrap().to_string());
        let other = ConjField::new(vec![("s".into(), Reality::Imaginary)]);
        assert!(matches!(t.try_add(&other.gen(0)), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn imaginary_generator() {
        let k = ConjField::new(vec![("t".into(), Reality::Real), ("s".into(), Reality::Imaginary)]);
        let s = k.gen(1);
        assert_eq!(s.conj(), s.neg());
        assert!(s.try_mul(&ConjElem::i()).unwrap().is_real());
        let x = k.gen(0).try_add(&s).unwrap().try_inv().unwrap();
        assert_eq!(x.conj().conj(), x);
        let back = x.re().try_add(&x.im().try_mul(&ConjElem::i()).unwrap()).unwrap();
        assert_eq!(back, x);
    }
}
