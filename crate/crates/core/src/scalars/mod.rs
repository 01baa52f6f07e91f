//! Exact scalars: rationals, univariate rational polynomials and the
//! conjugation-closed formal field used to model complex coefficients.

mod conj;
mod factor;
mod modp;
mod poly;
mod rational;
mod sturm;

pub use conj::{ConjElem, ConjField, GaussQ, Reality};
pub use factor::factor_rational_poly;
pub use poly::UniPoly;
pub use rational::{format_rational, parse_rational, rat, Rational};
pub use sturm::{real_root_count, signature_from_minpoly, sturm_chain};

use crate::{Error, Result};

/// Operations exposed through [`element_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Conj,
    Eq,
    IsReal,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ArithOutput {
    Elem(ConjElem),
    Bool(bool),
}

/// Checked arithmetic on formal-field elements. Binary operations need `b`.
pub fn element_arith(a: &ConjElem, b: Option<&ConjElem>, op: ArithOp) -> Result<ArithOutput> {
    let need_b = || b.ok_or_else(|| Error::InvalidInput(format!("{op:?} needs two operands")));
    Ok(match op {
        ArithOp::Add => ArithOutput::Elem(a.try_add(need_b()?)?),
        ArithOp::Mul => ArithOutput::Elem(a.try_mul(need_b()?)?),
        ArithOp::Inv => ArithOutput::Elem(a.try_inv()?),
        ArithOp::Conj => ArithOutput::Elem(a.conj()),
        ArithOp::Eq => ArithOutput::Bool(a.try_eq(need_b()?)?),
        ArithOp::IsReal => ArithOutput::Bool(a.is_real()),
    })
}
