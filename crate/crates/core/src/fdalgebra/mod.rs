//! Finite-dimensional associative unital algebras over ℚ given by structure
//! constants, with Wedderburn data.

mod presets;
mod quaternion;
mod wedderburn;

use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::linalg::Matrix;
use crate::scalars::{format_rational, parse_rational, Rational};
use crate::{Error, Result};

pub use presets::{parse_preset, preset, preset_catalog, Preset};
pub use quaternion::{hilbert_symbol, quaternion_splits};
pub use wedderburn::{
    center, factor_data, is_nilpotent_ideal, lift_idempotent, minimal_polynomial, radical, semisimple_quotient,
    FactorData, WedderburnData,
};

type SparseVec = Vec<(usize, Rational)>;

/// Algebra with basis `e_0 … e_{n−1}` and `e_i e_j = Σ_k c_{ij}^k e_k`.
#[derive(Clone, PartialEq)]
pub struct FdAlgebra {
    name: String,
    labels: Vec<String>,
    unit: Vec<Rational>,
    products: Vec<Vec<SparseVec>>,
}

/// Outcome of [`check_algebra`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraCheck {
    Pass,
    /// `(e_i e_j) e_k ≠ e_i (e_j e_k)`
    NotAssociative {
        i: usize,
        j: usize,
        k: usize,
    },
    /// `1 · e_i ≠ e_i` or `e_i · 1 ≠ e_i`
    NotUnital {
        i: usize,
    },
}

impl AlgebraCheck {
    pub fn passed(&self) -> bool {
        *self == AlgebraCheck::Pass
    }
}

impl fmt::Display for AlgebraCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraCheck::Pass => write!(f, "pass"),
            AlgebraCheck::NotAssociative { i, j, k } => {
                write!(f, "associativity fails for basis triple ({i}, {j}, {k})")
            }
            AlgebraCheck::NotUnital { i } => write!(f, "unit law fails on basis vector {i}"),
        }
    }
}

fn sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

fn dense(n: usize, v: &[(usize, Rational)]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (k, c) in v {
        out[*k] += c;
    }
    out
}

impl FdAlgebra {
    /// `table[i][j]` holds the coordinates of `e_i e_j`. Shapes are checked;
    /// the algebra axioms are not (see [`check_algebra`]).
    pub fn new(name: impl Into<String>, unit: Vec<Rational>, table: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let n = unit.len();
        if n == 0 {
            return Err(Error::InvalidInput("algebra of dimension 0".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::InvalidInput(format!("structure table must be {n}x{n}x{n}")));
        }
        let products = table.iter().map(|row| row.iter().map(|v| sparse(v)).collect()).collect();
        Ok(FdAlgebra { name: name.into(), labels: (0..n).map(|i| format!("e{i}")).collect(), unit, products })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    /// Sparse coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.products[i][j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.products[i][j].iter().find(|e| e.0 == k).map_or_else(Rational::zero, |e| e.1.clone())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::from_integer(1.into());
        v
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in &self.products[i][j] {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn scale(&self, c: &Rational, x: &[Rational]) -> Vec<Rational> {
        x.iter().map(|a| a * c).collect()
    }

    /// Matrix of `y ↦ x y`.
    pub fn left_mult(&self, x: &[Rational]) -> Matrix<Rational> {
        let cols: Vec<Vec<Rational>> = (0..self.dim()).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Matrix of `y ↦ y x`.
    pub fn right_mult(&self, x: &[Rational]) -> Matrix<Rational> {
        let cols: Vec<Vec<Rational>> = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// `tr(L_x)`
    pub fn trace(&self, x: &[Rational]) -> Rational {
        let l = self.left_mult(x);
        (0..self.dim()).map(|i| l.get(i, i).clone()).sum()
    }

    pub fn power(&self, x: &[Rational], e: usize) -> Vec<Rational> {
        (0..e).fold(self.unit.clone(), |acc, _| self.mul(&acc, x))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.products[i][j] == self.products[j][i]))
    }

    /// The same algebra in the basis given by the columns of `p` (invertible).
    pub fn change_basis(&self, p: &Matrix<Rational>) -> Result<Self> {
        let n = self.dim();
        let pinv = p.inverse().ok_or_else(|| Error::InvalidInput("basis change is singular".into()))?;
        let cols = p.columns();
        let table = (0..n).map(|i| (0..n).map(|j| pinv.mul_vec(&self.mul(&cols[i], &cols[j]))).collect()).collect();
        FdAlgebra::new(self.name.clone(), pinv.mul_vec(&self.unit), table)
    }

    /// `A × B` with basis `(e_i, 0)` followed by `(0, f_j)`.
    pub fn product(&self, o: &FdAlgebra) -> FdAlgebra {
        let (n, m) = (self.dim(), o.dim());
        let mut table = vec![vec![vec![Rational::zero(); n + m]; n + m]; n + m];
        for (i, row) in self.products.iter().enumerate() {
            for (j, terms) in row.iter().enumerate() {
                for (k, c) in terms {
                    table[i][j][*k] = c.clone();
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for (k, c) in &o.products[i][j] {
                    table[n + i][n + j][n + k] = c.clone();
                }
            }
        }
        let mut unit = self.unit.clone();
        unit.extend(o.unit.iter().cloned());
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("({l},0)")).collect();
        labels.extend(o.labels.iter().map(|l| format!("(0,{l})")));
        FdAlgebra::new(format!("{} × {}", self.name, o.name), unit, table).unwrap().with_labels(labels)
    }

    /// Parses `{"dim": n, "unit": [..], "table": [[[..]]]}`; entries are
    /// rationals written as strings `"p/q"` or integers.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::InvalidInput(m.to_string());
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("missing or non-integer \"dim\""))? as usize;
        let entry = |x: &Value| -> Result<Rational> {
            match x {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => n
                    .as_i64()
                    .map(|k| Rational::from_integer(k.into()))
                    .ok_or_else(|| bad("non-integer number; write rationals as \"p/q\"")),
                _ => Err(bad("entries must be strings or integers")),
            }
        };
        let list = |x: &Value, what: &str| -> Result<Vec<Value>> {
            x.as_array().cloned().ok_or_else(|| bad(&format!("{what} must be an array")))
        };
        let unit = list(v.get("unit").ok_or_else(|| bad("missing \"unit\""))?, "unit")?
            .iter()
            .map(entry)
            .collect::<Result<Vec<_>>>()?;
        if unit.len() != dim {
            return Err(bad(&format!("unit has {} entries, dim is {dim}", unit.len())));
        }
        let table = list(v.get("table").ok_or_else(|| bad("missing \"table\""))?, "table")?
            .iter()
            .map(|row| {
                list(row, "table row")?
                    .iter()
                    .map(|cell| list(cell, "table cell")?.iter().map(entry).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let name = v.get("name").and_then(Value::as_str).unwrap_or("input").to_string();
        let mut a = FdAlgebra::new(name, unit, table)?;
        if let Some(labels) = v.get("labels").and_then(Value::as_array) {
            let labels: Vec<String> = labels.iter().map(|l| l.as_str().unwrap_or("?").to_string()).collect();
            if labels.len() != dim {
                return Err(bad("labels must have dim entries"));
            }
            a = a.with_labels(labels);
        }
        Ok(a)
    }

    pub fn to_json(&self) -> Value {
        let n = self.dim();
        let table: Vec<Vec<Vec<String>>> = (0..n)
            .map(|i| (0..n).map(|j| dense(n, &self.products[i][j]).iter().map(format_rational).collect()).collect())
            .collect();
        json!({
            "name": self.name,
            "dim": n,
            "labels": self.labels,
            "unit": self.unit.iter().map(format_rational).collect::<Vec<_>>(),
            "table": table,
        })
    }
}

impl fmt::Debug for FdAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FdAlgebra({}, dim {})", self.name, self.dim())
    }
}

/// Exhaustive check of associativity and the unit laws.
pub fn check_algebra(a: &FdAlgebra) -> AlgebraCheck {
    let n = a.dim();
    for i in 0..n {
        let e = a.basis_vector(i);
        if a.mul(&a.unit, &e) != e || a.mul(&e, &a.unit) != e {
            return AlgebraCheck::NotUnital { i };
        }
    }
    let basis: Vec<Vec<Rational>> = (0..n).map(|i| a.basis_vector(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let ij = dense(n, &a.products[i][j]);
            for k in 0..n {
                let jk = dense(n, &a.products[j][k]);
                if a.mul(&ij, &basis[k]) != a.mul(&basis[i], &jk) {
                    return AlgebraCheck::NotAssociative { i, j, k };
                }
            }
        }
    }
    AlgebraCheck::Pass
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn json_round_trip_and_checks() {
        let a = preset(&Preset::DualNumbers).unwrap();
        assert!(check_algebra(&a).passed());
        let b = FdAlgebra::from_value(&a.to_json()).unwrap();
        assert_eq!(a, b);
        let s3 = preset(&Preset::GroupAlgebra("S3".into())).unwrap();
        let mut t = s3.to_json();
        let old = t["table"][2][3].clone();
        let k = old.as_array().unwrap().iter().position(|c| c == "1").unwrap();
        t["table"][2][3][k] = json!("2");
        let broken = FdAlgebra::from_value(&t).unwrap();
        assert!(matches!(check_algebra(&broken), AlgebraCheck::NotAssociative { .. }));
        assert!(FdAlgebra::from_json("{\"dim\": 2, \"unit\": [\"1\"], \"table\": []}").is_err());
        assert!(FdAlgebra::from_json("not json").is_err());
    }

    #[test]
    fn group_algebra_s3_is_associative() {
        let a = preset(&Preset::GroupAlgebra("S3".into())).unwrap();
        assert_eq!(a.dim(), 6);
        assert_eq!(check_algebra(&a), AlgebraCheck::Pass);
        assert!(!a.is_commutative());
        assert_eq!(a.trace(&a.unit), rat(6, 1));
    }
}
