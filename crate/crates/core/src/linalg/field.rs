use std::fmt;

use num_traits::{One, Zero};

use crate::scalars::{format_rational, ConjElem, Rational};

/// Exact field used as matrix entries.
///
/// `conj` is the field automorphism `σ`; it is the identity on ℚ.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    /// Whether the field contains `i` with `σ(i) = −i`, so that it is a
    /// degree-two extension of its fixed field.
    fn has_imaginary_unit() -> bool;

    /// `(re, im)` with `x = re + i·im`, both fixed by `σ`.
    /// Only meaningful when [`Field::has_imaginary_unit`] holds.
    fn re_im(&self) -> (Self, Self);

    /// `i` itself; only meaningful when [`Field::has_imaginary_unit`] holds.
    fn imaginary_unit() -> Self;

    /// Compact text form for reports and dumps.
    fn render(&self) -> String;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Rank of a dense matrix. Fields may override with a fraction-free method.
    fn dense_rank(m: &super::Matrix<Self>) -> usize {
        m.naive_rank()
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn has_imaginary_unit() -> bool {
        false
    }
    fn re_im(&self) -> (Self, Self) {
        (self.clone(), Zero::zero())
    }
    fn imaginary_unit() -> Self {
        panic!("ℚ has no imaginary unit")
    }
    fn render(&self) -> String {
        format_rational(self)
    }
    fn dense_rank(m: &super::Matrix<Self>) -> usize {
        super::matrix::bareiss_rank(m)
    }
}

impl Field for ConjElem {
    fn zero() -> Self {
        ConjElem::zero()
    }
    fn one() -> Self {
        ConjElem::one()
    }
    fn is_zero(&self) -> bool {
        ConjElem::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("entries from different fields")
    }
    fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("entries from different fields")
    }
    fn neg(&self) -> Self {
        ConjElem::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
    fn conj(&self) -> Self {
        ConjElem::conj(self)
    }
    fn from_rational(q: &Rational) -> Self {
        ConjElem::from_rational(q.clone())
    }
    fn has_imaginary_unit() -> bool {
        true
    }
    fn re_im(&self) -> (Self, Self) {
        (self.re(), self.im())
    }
    fn imaginary_unit() -> Self {
        ConjElem::i()
    }
    fn render(&self) -> String {
        self.to_string()
    }
}
