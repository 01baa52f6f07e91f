use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::quaternion::quaternion_splits;
use super::FdAlgebra;
use crate::linalg::Matrix;
use crate::scalars::{factor_rational_poly, signature_from_minpoly, Rational, UniPoly};
use crate::{Error, Result};

const PRIMITIVE_ELEMENT_TRIES: usize = 64;

/// One simple factor `A_i` of the semisimple quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorData {
    pub dim_q: usize,
    /// Minimal polynomial of a generator of the center `F_i`.
    pub center_minpoly: UniPoly,
    /// `[F_i : ℚ]`
    pub d: usize,
    /// Matrix size `m` in `A_i ≅ M_m(D)`, when it could be decided.
    pub m: Option<usize>,
    pub r1: usize,
    pub r2: usize,
    /// Central idempotent in quotient coordinates.
    pub idempotent: Vec<Rational>,
    /// Generator of the center in quotient coordinates.
    pub center_generator: Vec<Rational>,
}

impl FactorData {
    /// `dim_{F_i} A_i`, always a perfect square.
    pub fn dim_over_center(&self) -> usize {
        self.dim_q / self.d
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim_q": self.dim_q,
            "center_minpoly": self.center_minpoly.to_string(),
            "d": self.d,
            "m": self.m,
            "r1": self.r1,
            "r2": self.r2,
        })
    }
}

/// Radical, semisimple quotient and simple factors.
#[derive(Debug, Clone)]
pub struct WedderburnData {
    pub dim: usize,
    /// Basis of the radical as columns in the coordinates of `A`.
    pub radical: Matrix<Rational>,
    pub quotient: FdAlgebra,
    /// Complement vectors in `A` representing the quotient basis.
    pub section: Matrix<Rational>,
    /// `A → Aˢˢ` in coordinates.
    pub projection: Matrix<Rational>,
    /// Basis of the center of `Aˢˢ`, quotient coordinates.
    pub center_basis: Matrix<Rational>,
    pub primitive_element: Vec<Rational>,
    pub minpoly: UniPoly,
    pub factors: Vec<FactorData>,
    pub seed: u64,
}

impl WedderburnData {
    pub fn radical_dim(&self) -> usize {
        self.radical.cols()
    }

    /// `dim Z(Aˢˢ) = Σ d_i`, the number of simple factors of `A ⊗ ℂ`.
    pub fn center_dim(&self) -> usize {
        self.factors.iter().map(|f| f.d).sum()
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical.cols() == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "radical_dim": self.radical_dim(),
            "semisimple_dim": self.quotient.dim(),
            "center_dim": self.center_dim(),
            "primitive_element_minpoly": self.minpoly.to_string(),
            "seed": self.seed,
            "factors": self.factors.iter().map(FactorData::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Kernel of the trace form `(x, y) ↦ tr(L_{xy})`.
pub fn radical(a: &FdAlgebra) -> Matrix<Rational> {
    let n = a.dim();
    let traces: Vec<Rational> = (0..n).map(|k| a.trace(&a.basis_vector(k))).collect();
    let form = Matrix::from_fn(n, n, |i, j| a.basis_product(i, j).iter().map(|(k, c)| c * &traces[*k]).sum());
    form.kernel()
}

/// Whether the span of `basis` is a two-sided ideal with some vanishing power.
pub fn is_nilpotent_ideal(a: &FdAlgebra, basis: &Matrix<Rational>) -> bool {
    let n = a.dim();
    let cols = basis.columns();
    for v in &cols {
        for i in 0..n {
            let e = a.basis_vector(i);
            let prods = Matrix::from_columns(n, &[a.mul(&e, v), a.mul(v, &e)]);
            if !basis.spans(&prods) {
                return false;
            }
        }
    }
    let mut power = cols.clone();
    for _ in 0..=n {
        if power.is_empty() {
            return true;
        }
        let next: Vec<Vec<Rational>> = power.iter().flat_map(|x| cols.iter().map(move |y| a.mul(x, y))).collect();
        power = Matrix::from_columns(n, &next).column_basis().columns();
    }
    power.is_empty()
}

/// Quotient by the span of `rad` on a complement of standard basis vectors,
/// with the section and projection matrices.
pub fn semisimple_quotient(a: &FdAlgebra, rad: &Matrix<Rational>) -> (FdAlgebra, Matrix<Rational>, Matrix<Rational>) {
    let n = a.dim();
    let r = rad.cols();
    let (_, pivots) = rad.hstack(&Matrix::identity(n)).unwrap().rref();
    let comp: Vec<usize> = pivots.iter().filter(|&&p| p >= r).map(|p| p - r).collect();
    let section = Matrix::identity(n).select_columns(&comp);
    let full = rad.hstack(&section).unwrap();
    let inv = full.inverse().expect("radical plus complement is a basis");
    let projection = inv.select_rows(&(r..n).collect::<Vec<_>>());
    let q = comp.len();
    let table = (0..q)
        .map(|i| {
            (0..q).map(|j| projection.mul_vec(&a.mul(&a.basis_vector(comp[i]), &a.basis_vector(comp[j])))).collect()
        })
        .collect();
    let unit = projection.mul_vec(a.unit());
    let labels = comp.iter().map(|&i| a.labels()[i].clone()).collect();
    let quotient = FdAlgebra::new(format!("{}ˢˢ", a.name()), unit, table).unwrap().with_labels(labels);
    (quotient, section, projection)
}

/// Basis of `{z : z x = x z for all x}`.
pub fn center(a: &FdAlgebra) -> Matrix<Rational> {
    let n = a.dim();
    let mut stacked = Matrix::zeros(0, n);
    for j in 0..n {
        let e = a.basis_vector(j);
        let diff = a.right_mult(&e).sub(&a.left_mult(&e)).unwrap();
        stacked = stacked.vstack(&diff).unwrap();
    }
    stacked.kernel()
}

/// Monic minimal polynomial of `x` via the Krylov sequence `1, x, x², …`.
pub fn minimal_polynomial(a: &FdAlgebra, x: &[Rational]) -> UniPoly {
    let n = a.dim();
    let mut powers = vec![a.unit().to_vec()];
    loop {
        let next = a.mul(powers.last().unwrap(), x);
        let m = Matrix::from_columns(n, &powers);
        if let Some(c) = m.solve(&Matrix::from_columns(n, std::slice::from_ref(&next))) {
            let mut coeffs: Vec<Rational> = (0..powers.len()).map(|i| -c.get(i, 0).clone()).collect();
            coeffs.push(Rational::one());
            return UniPoly::new(coeffs);
        }
        powers.push(next);
    }
}

fn eval_poly(a: &FdAlgebra, p: &UniPoly, x: &[Rational]) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); a.dim()];
    for c in p.coeffs().iter().rev() {
        acc = a.mul(&acc, x);
        acc = a.add(&acc, &a.scale(c, a.unit()));
    }
    acc
}

/// Newton iteration `e ← 3e² − 2e³` from an idempotent modulo a nilpotent ideal.
pub fn lift_idempotent(a: &FdAlgebra, e: &[Rational]) -> Result<Vec<Rational>> {
    let mut e = e.to_vec();
    for _ in 0..64 {
        let e2 = a.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = a.mul(&e2, &e);
        e = a
            .add(&a.scale(&Rational::from_integer(3.into()), &e2), &a.scale(&Rational::from_integer((-2).into()), &e3));
    }
    Err(Error::InvalidInput("element is not idempotent modulo a nilpotent ideal".into()))
}

/// The algebra structure on the span of `basis`, a subalgebra with identity `unit`.
fn subalgebra(a: &FdAlgebra, basis: &Matrix<Rational>, unit: &[Rational]) -> FdAlgebra {
    let k = basis.cols();
    let cols = basis.columns();
    let coords = |v: Vec<Rational>| -> Vec<Rational> {
        basis.solve(&Matrix::from_columns(a.dim(), &[v])).expect("closed under products").column(0)
    };
    let table = (0..k).map(|i| (0..k).map(|j| coords(a.mul(&cols[i], &cols[j]))).collect()).collect();
    FdAlgebra::new("factor", coords(unit.to_vec()), table).unwrap()
}

/// `m` for a 4-dimensional central simple algebra over ℚ: 2 if split, 1 if
/// a division algebra.
fn quaternion_m(s: &FdAlgebra) -> usize {
    let n = s.dim();
    let one = s.unit().to_vec();
    let scalar_of = |v: &[Rational]| -> Option<Rational> {
        let c = (0..n).find(|&i| !one[i].is_zero()).map(|i| &v[i] / &one[i])?;
        (s.scale(&c, &one) == v).then_some(c)
    };
    let traces = Matrix::from_fn(1, n, |_, j| s.trace(&s.basis_vector(j)));
    let pure = traces.kernel().columns();
    let candidates = |vs: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        let mut out = vs.to_vec();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                out.push(s.add(&vs[i], &vs[j]));
            }
        }
        out
    };
    let square = |v: &[Rational]| scalar_of(&s.mul(v, v)).filter(|c| !c.is_zero());
    let (x, a) = candidates(&pure)
        .into_iter()
        .find_map(|v| square(&v).map(|c| (v, c)))
        .expect("trace-zero part of a quaternion algebra is anisotropic somewhere");
    // y in the pure part with xy + yx = 0
    let pm = Matrix::from_columns(n, &pure);
    let anti: Vec<Vec<Rational>> = pure.iter().map(|y| s.add(&s.mul(&x, y), &s.mul(y, &x))).collect();
    let kernel = Matrix::from_columns(n, &anti).kernel();
    let ys: Vec<Vec<Rational>> = kernel.columns().iter().map(|c| pm.mul_vec(c)).collect();
    let b = candidates(&ys).into_iter().find_map(|v| square(&v)).expect("anticommuting element with nonzero square");
    if quaternion_splits(&a, &b) {
        2
    } else {
        1
    }
}

fn integer_sqrt(n: usize) -> Option<usize> {
    let r = (n as f64).sqrt().round() as usize;
    (r * r == n).then_some(r)
}

/// Wedderburn data of `A`, deterministic for a fixed seed.
pub fn factor_data(a: &FdAlgebra, seed: u64) -> Result<WedderburnData> {
    let rad = radical(a);
    let (q, section, projection) = semisimple_quotient(a, &rad);
    let z = center(&q);
    let zdim = z.cols();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = None;
    for attempt in 0..PRIMITIVE_ELEMENT_TRIES {
        let bound = 2 + attempt as i64 / 4;
        let coefs: Vec<Rational> =
            (0..zdim).map(|_| Rational::from_integer(rng.gen_range(-bound..=bound).into())).collect();
        let x = z.mul_vec(&coefs);
        let mp = minimal_polynomial(&q, &x);
        if mp.degree() == Some(zdim) {
            found = Some((x, mp));
            break;
        }
    }
    let (prim, minpoly) = found.ok_or(Error::SearchFailure(PRIMITIVE_ELEMENT_TRIES))?;
    let pieces = factor_rational_poly(&minpoly)?;
    if pieces.iter().any(|(_, m)| *m > 1) {
        return Err(Error::InvalidInput("center of the semisimple quotient is not reduced".into()));
    }
    let mut factors = Vec::new();
    for (f, _) in &pieces {
        let g = minpoly.div_rem(f).unwrap().0;
        let (_, s, _) = g.ext_gcd(f);
        let e = eval_poly(&q, &s.mul(&g), &prim);
        let le = q.left_mult(&e);
        let basis = le.column_basis();
        let dim_q = basis.cols();
        let d = f.degree().unwrap();
        let (r1, r2) = signature_from_minpoly(f)?;
        let over_center = dim_q / d;
        let m = match integer_sqrt(over_center) {
            Some(1) => Some(1),
            Some(2) if d == 1 => Some(quaternion_m(&subalgebra(&q, &basis, &e))),
            Some(_) => None,
            None => {
                return Err(Error::InvalidInput(format!(
                    "simple factor of dimension {dim_q} over a degree-{d} center is not a square"
                )))
            }
        };
        factors.push(FactorData {
            dim_q,
            center_minpoly: f.clone(),
            d,
            m,
            r1,
            r2,
            center_generator: q.mul(&e, &prim),
            idempotent: e,
        });
    }
    factors.sort_by(|x, y| {
        (x.dim_q, x.d, x.center_minpoly.coeffs().to_vec()).cmp(&(y.dim_q, y.d, y.center_minpoly.coeffs().to_vec()))
    });
    Ok(WedderburnData {
        dim: a.dim(),
        radical: rad,
        quotient: q,
        section,
        projection,
        center_basis: z,
        primitive_element: prim,
        minpoly,
        factors,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{preset, Preset};
    use super::*;

    fn summary(w: &WedderburnData) -> Vec<(usize, usize, Option<usize>, usize, usize)> {
        w.factors.iter().map(|f| (f.dim_q, f.d, f.m, f.r1, f.r2)).collect()
    }

    #[test]
    fn radicals() {
        assert_eq!(radical(&preset(&Preset::FullMatrix(2)).unwrap()).cols(), 0);
        let dual = preset(&Preset::DualNumbers).unwrap();
        let r = radical(&dual);
        assert_eq!(r.cols(), 1);
        assert!(is_nilpotent_ideal(&dual, &r));
        let t2 = preset(&Preset::UpperTriangular(2)).unwrap();
        let r = radical(&t2);
        assert_eq!(r.cols(), 1);
        assert!(is_nilpotent_ideal(&t2, &r));
        let (q, _, _) = semisimple_quotient(&t2, &r);
        assert_eq!(q.dim(), 2);
        assert!(q.is_commutative());
        assert_eq!(radical(&q).cols(), 0);
    }

    #[test]
    fn decompositions() {
        let c3 = factor_data(&preset(&Preset::GroupAlgebra("C3".into())).unwrap(), 0).unwrap();
        assert_eq!(summary(&c3), vec![(1, 1, Some(1), 1, 0), (2, 2, Some(1), 0, 1)]);
        // the center is ℚ(√−3): discriminant −3 up to a rational square
        let f = &c3.factors[1].center_minpoly;
        let disc = f.coeff(1) * f.coeff(1) - Rational::from_integer(4.into()) * f.coeff(0);
        let ratio = disc / Rational::from_integer((-3).into());
        let (n, d) = (ratio.numer().sqrt(), ratio.denom().sqrt());
        assert_eq!(Rational::new(&n * &n, &d * &d), ratio);
        let s3 = factor_data(&preset(&Preset::GroupAlgebra("S3".into())).unwrap(), 0).unwrap();
        assert_eq!(summary(&s3), vec![(1, 1, Some(1), 1, 0), (1, 1, Some(1), 1, 0), (4, 1, Some(2), 1, 0)]);
        let h = factor_data(&preset(&Preset::Quaternion(-1, -1)).unwrap(), 0).unwrap();
        assert_eq!(summary(&h), vec![(4, 1, Some(1), 1, 0)]);
        let split = factor_data(&preset(&Preset::Quaternion(1, -1)).unwrap(), 0).unwrap();
        assert_eq!(summary(&split), vec![(4, 1, Some(2), 1, 0)]);
        let t3 = factor_data(&preset(&Preset::UpperTriangular(3)).unwrap(), 0).unwrap();
        assert_eq!(t3.radical_dim(), 3);
        assert_eq!(t3.center_dim(), 3);
    }

    #[test]
    fn lifted_idempotents() {
        let t2 = preset(&Preset::UpperTriangular(2)).unwrap();
        let w = factor_data(&t2, 0).unwrap();
        for f in &w.factors {
            let guess = w.section.mul_vec(&f.idempotent);
            let e = lift_idempotent(&t2, &guess).unwrap();
            assert_eq!(t2.mul(&e, &e), e);
            assert_eq!(w.projection.mul_vec(&e), f.idempotent);
        }
    }
}
