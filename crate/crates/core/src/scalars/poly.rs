use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, parse_rational, Rational};
use crate::{Error, Result};

/// Dense univariate polynomial over ℚ, coefficient `i` multiplies `x^i`.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial
/// has an empty coefficient list and `degree() == None`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x`
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lc = d.lc();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut q = vec![Rational::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        rem.truncate(dd);
        Some((Self::new(q), Self::new(rem)))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).expect("division by zero polynomial").1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.lc();
        self.scale(&(Rational::one() / lc))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).unwrap();
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Rational::one() / r0.lc();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).map(|(q, _)| q.monic()).unwrap_or_default()
    }

    /// Yun's squarefree decomposition: monic `(factor, multiplicity)` pairs
    /// whose product (with multiplicities) is `self.monic()`.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let d = f.derivative();
        let mut a = f.gcd(&d);
        let mut b = f.div_rem(&a).unwrap().0;
        let mut c = d.div_rem(&a).unwrap().0;
        let mut dd = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&dd);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).unwrap().0;
            c = dd.div_rem(&a).unwrap().0;
            dd = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Primitive integer polynomial with positive leading coefficient
    /// proportional to `self`.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|v| Rational::from_integer(v.clone())).collect())
    }

    /// Coefficients low-to-high as `"p/q"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(c: &[S]) -> Result<Self> {
        Ok(Self::new(c.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<_>>()?))
    }

    /// Parses `x^3 - 2`, `x^2+x+1`, `2*x - 1/3` and similar single-variable
    /// expressions. Any single letter is accepted as the variable.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cannot parse polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut acc = Self::zero();
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-Rational::one(), b.to_string()),
                None => (Rational::one(), t.trim_start_matches('+').to_string()),
            };
            let var_pos = body.find(|c: char| c.is_ascii_alphabetic());
            let (coef, deg) = match var_pos {
                None => (parse_rational(&body).map_err(|_| bad())?, 0u32),
                Some(p) => {
                    let c = body[..p].trim_end_matches('*');
                    let coef = if c.is_empty() { Rational::one() } else { parse_rational(c).map_err(|_| bad())? };
                    let rest = &body[p + 1..];
                    let deg = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').and_then(|e| e.parse::<u32>().ok()).ok_or_else(bad)?
                    };
                    (coef, deg)
                }
            };
            let mut c = vec![Rational::zero(); deg as usize + 1];
            c[deg as usize] = sign * coef;
            acc = acc.add(&Self::new(c));
        }
        Ok(acc)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coef = i == 0 || !a.is_one();
            if show_coef {
                write!(f, "{}", format_rational(&a))?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coef { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coef { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        Self::from_strings(&v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = UniPoly::parse("x^3 - 2").unwrap();
        assert_eq!(p, UniPoly::from_ints(&[-2, 0, 0, 1]));
        assert_eq!(UniPoly::parse("x^2+x+1").unwrap(), UniPoly::from_ints(&[1, 1, 1]));
        assert_eq!(UniPoly::parse("-x + 1/2").unwrap().to_strings(), vec!["1/2", "-1"]);
        assert_eq!(p.to_string(), "x^3 - 2");
        assert!(UniPoly::parse("x^").is_err());
    }

    #[test]
    fn division_and_gcd() {
        let a = UniPoly::from_ints(&[-1, 0, 0, 0, 1]);
        let b = UniPoly::from_ints(&[-1, 0, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_ints(&[1, 0, 1]));
        assert_eq!(a.gcd(&UniPoly::from_ints(&[-1, 0, 0, 1])), UniPoly::from_ints(&[-1, 1]));
        let (g, s, t) = a.ext_gcd(&UniPoly::from_ints(&[2, 1]));
        assert_eq!(s.mul(&a).add(&t.mul(&UniPoly::from_ints(&[2, 1]))), g);
    }

    #[test]
    fn yun() {
        // (x^2 - 2)^2 (x + 1)
        let p = UniPoly::from_ints(&[-2, 0, 1]).pow(2).mul(&UniPoly::from_ints(&[1, 1]));
        let d = p.squarefree_decomposition();
        assert_eq!(d, vec![(UniPoly::from_ints(&[1, 1]), 1), (UniPoly::from_ints(&[-2, 0, 1]), 2)]);
    }
}
