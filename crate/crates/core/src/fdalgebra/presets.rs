use std::fmt;

use num_traits::{One, Zero};

use super::FdAlgebra;
use crate::scalars::{factor_rational_poly, Rational, UniPoly};
use crate::{Error, Result};

/// Named algebra families, addressable as strings such as
/// `number_field:x^2+1`, `group_algebra:S3` or `product:rational;dual_numbers`.
#[derive(Debug, Clone, PartialEq)]
pub enum Preset {
    /// ℚ itself.
    Rational,
    /// `C<n>` for cyclic groups or `S3`.
    GroupAlgebra(String),
    /// Group given by its multiplication table, identity at index 0.
    GroupTable(Vec<Vec<usize>>),
    UpperTriangular(usize),
    FullMatrix(usize),
    DualNumbers,
    /// `(a, b)_ℚ` with `i² = a`, `j² = b`, `ij = −ji`.
    Quaternion(i64, i64),
    /// `ℚ[x]/(p)` for irreducible `p`.
    NumberField(UniPoly),
    /// `ℚ[x]/(x^N)`
    TruncatedPoly(usize),
    Product(Vec<Preset>),
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Rational => write!(f, "rational"),
            Preset::GroupAlgebra(g) => write!(f, "group_algebra:{g}"),
            Preset::GroupTable(t) => write!(f, "group_table:{}", t.len()),
            Preset::UpperTriangular(n) => write!(f, "upper_triangular:{n}"),
            Preset::FullMatrix(n) => write!(f, "full_matrix:{n}"),
            Preset::DualNumbers => write!(f, "dual_numbers"),
            Preset::Quaternion(a, b) => write!(f, "quaternion:{a},{b}"),
            Preset::NumberField(p) => write!(f, "number_field:{}", p.to_string().replace(' ', "")),
            Preset::TruncatedPoly(n) => write!(f, "truncated_poly:{n}"),
            Preset::Product(ps) => {
                let parts: Vec<String> = ps.iter().map(ToString::to_string).collect();
                write!(f, "product:{}", parts.join(";"))
            }
        }
    }
}

/// `(example, description)` for every family.
pub fn preset_catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("rational", "the field ℚ"),
        ("number_field:x^2+1", "ℚ[x]/(p) for an irreducible p"),
        ("group_algebra:C3", "group algebra of a cyclic group C<n>"),
        ("group_algebra:S3", "group algebra of the symmetric group S3"),
        ("upper_triangular:2", "upper triangular n×n matrices T_n(ℚ)"),
        ("full_matrix:2", "all n×n matrices M_n(ℚ)"),
        ("dual_numbers", "ℚ[ε]/(ε²)"),
        ("truncated_poly:3", "ℚ[x]/(x^N)"),
        ("quaternion:-1,-1", "quaternion algebra (a, b) over ℚ"),
        ("product:rational;dual_numbers", "direct product of presets separated by ';'"),
    ]
}

fn int(n: &str, what: &str) -> Result<usize> {
    n.trim().parse().map_err(|_| Error::InvalidInput(format!("{what} expects a non-negative integer, got {n:?}")))
}

/// Parses a preset string.
pub fn parse_preset(s: &str) -> Result<Preset> {
    let s = s.trim();
    let (name, arg) = match s.split_once(':') {
        Some((n, a)) => (n.trim(), Some(a.trim())),
        None => (s, None),
    };
    let need = |what: &str| arg.ok_or_else(|| Error::InvalidInput(format!("preset {name} needs a parameter ({what})")));
    Ok(match name {
        "rational" | "Q" => Preset::Rational,
        "group_algebra" => Preset::GroupAlgebra(need("group name such as C3 or S3")?.to_string()),
        "upper_triangular" => Preset::UpperTriangular(int(need("n")?, name)?),
        "full_matrix" => Preset::FullMatrix(int(need("n")?, name)?),
        "dual_numbers" => Preset::DualNumbers,
        "truncated_poly" => Preset::TruncatedPoly(int(need("N")?, name)?),
        "quaternion" => {
            let a = need("a,b")?;
            let (x, y) =
                a.split_once(',').ok_or_else(|| Error::InvalidInput("quaternion expects two integers a,b".into()))?;
            let p = |t: &str| {
                t.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("quaternion parameter {t:?}")))
            };
            Preset::Quaternion(p(x)?, p(y)?)
        }
        "number_field" => Preset::NumberField(UniPoly::parse(need("minimal polynomial")?)?),
        "product" => {
            Preset::Product(need("presets separated by ';'")?.split(';').map(parse_preset).collect::<Result<_>>()?)
        }
        other => return Err(Error::InvalidInput(format!("unknown preset {other:?}"))),
    })
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn empty_table(n: usize) -> Vec<Vec<Vec<Rational>>> {
    vec![vec![vec![Rational::zero(); n]; n]; n]
}

fn unit_at(n: usize, i: usize) -> Vec<Rational> {
    let mut u = vec![Rational::zero(); n];
    u[i] = Rational::one();
    u
}

fn group_table_algebra(name: String, t: &[Vec<usize>]) -> Result<FdAlgebra> {
    let n = t.len();
    if n == 0 || t.iter().any(|r| r.len() != n || r.iter().any(|&g| g >= n)) {
        return Err(Error::InvalidInput("group table must be n×n with entries below n".into()));
    }
    if (0..n).any(|g| t[0][g] != g || t[g][0] != g) {
        return Err(Error::InvalidInput("element 0 of a group table must be the identity".into()));
    }
    let mut table = empty_table(n);
    for i in 0..n {
        for j in 0..n {
            table[i][j][t[i][j]] = Rational::one();
        }
    }
    Ok(FdAlgebra::new(name, unit_at(n, 0), table)?.with_labels((0..n).map(|g| format!("g{g}")).collect()))
}

fn symmetric_group_table(k: usize) -> Vec<Vec<usize>> {
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for pos in 0..k {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }
    let mut all = perms(k);
    all.sort();
    let index = |p: &Vec<usize>| all.iter().position(|x| x == p).unwrap();
    all.iter().map(|a| all.iter().map(|b| index(&(0..k).map(|i| a[b[i]]).collect())).collect()).collect()
}

fn matrix_units(n: usize, upper: bool) -> FdAlgebra {
    let units: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| !upper || i <= j).collect();
    let d = units.len();
    let pos = |u: (usize, usize)| units.iter().position(|&x| x == u);
    let mut table = empty_table(d);
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            if j == k {
                table[a][b][pos((i, l)).unwrap()] = Rational::one();
            }
        }
    }
    let mut unit = vec![Rational::zero(); d];
    for i in 0..n {
        unit[pos((i, i)).unwrap()] = Rational::one();
    }
    let name = if upper { format!("T{n}(ℚ)") } else { format!("M{n}(ℚ)") };
    FdAlgebra::new(name, unit, table)
        .unwrap()
        .with_labels(units.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect())
}

/// `ℚ[x]/(p)` for monic `p`, basis `1, x, …, x^{n−1}`.
fn quotient_ring(name: String, p: &UniPoly) -> FdAlgebra {
    let n = p.degree().unwrap();
    let mut table = empty_table(n);
    for i in 0..n {
        for j in 0..n {
            let mut c = vec![Rational::zero(); i + j + 1];
            c[i + j] = Rational::one();
            let r = UniPoly::new(c).rem(p);
            for (k, v) in r.coeffs().iter().enumerate() {
                table[i][j][k] = v.clone();
            }
        }
    }
    let labels = (0..n).map(|k| match k {
        0 => "1".to_string(),
        1 => "x".to_string(),
        _ => format!("x^{k}"),
    });
    FdAlgebra::new(name, unit_at(n, 0), table).unwrap().with_labels(labels.collect())
}

/// Builds the algebra of a preset.
pub fn preset(p: &Preset) -> Result<FdAlgebra> {
    let a = match p {
        Preset::Rational => quotient_ring("ℚ".into(), &UniPoly::x()),
        Preset::GroupAlgebra(g) => {
            let g = g.trim();
            if g == "S3" {
                group_table_algebra("ℚ[S3]".into(), &symmetric_group_table(3))?
            } else if let Some(n) = g.strip_prefix('C') {
                let n = int(n, "cyclic group")?;
                if n == 0 {
                    return Err(Error::InvalidInput("cyclic group of order 0".into()));
                }
                let t: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
                group_table_algebra(format!("ℚ[C{n}]"), &t)?
            } else {
                return Err(Error::InvalidInput(format!("unknown group {g:?}; use C<n> or S3")));
            }
        }
        Preset::GroupTable(t) => group_table_algebra(format!("ℚ[G{}]", t.len()), t)?,
        Preset::UpperTriangular(n) | Preset::FullMatrix(n) if *n == 0 => {
            return Err(Error::InvalidInput("matrix size must be at least 1".into()))
        }
        Preset::UpperTriangular(n) => matrix_units(*n, true),
        Preset::FullMatrix(n) => matrix_units(*n, false),
        Preset::DualNumbers => {
            let mut a = quotient_ring("ℚ[ε]".into(), &UniPoly::from_ints(&[0, 0, 1]));
            a = a.with_labels(vec!["1".into(), "ε".into()]);
            a
        }
        Preset::TruncatedPoly(n) => {
            if *n == 0 {
                return Err(Error::InvalidInput("truncated_poly needs N ≥ 1".into()));
            }
            let mut c = vec![0i64; n + 1];
            c[*n] = 1;
            quotient_ring(format!("ℚ[x]/(x^{n})"), &UniPoly::from_ints(&c))
        }
        Preset::Quaternion(a, b) => {
            if *a == 0 || *b == 0 {
                return Err(Error::InvalidInput("quaternion parameters must be nonzero".into()));
            }
            let mut t = empty_table(4);
            let mut put = |i: usize, j: usize, k: usize, c: i64| t[i][j][k] = q(c);
            for x in 0..4 {
                put(0, x, x, 1);
                put(x, 0, x, 1);
            }
            put(1, 1, 0, *a);
            put(2, 2, 0, *b);
            put(3, 3, 0, -a * b);
            put(1, 2, 3, 1);
            put(2, 1, 3, -1);
            put(1, 3, 2, *a);
            put(3, 1, 2, -a);
            put(2, 3, 1, -b);
            put(3, 2, 1, *b);
            FdAlgebra::new(format!("({a},{b})_ℚ"), unit_at(4, 0), t)?.with_labels(vec![
                "1".into(),
                "i".into(),
                "j".into(),
                "k".into(),
            ])
        }
        Preset::NumberField(poly) => {
            if poly.degree().unwrap_or(0) == 0 {
                return Err(Error::InvalidInput("number_field needs a polynomial of degree ≥ 1".into()));
            }
            let f = factor_rational_poly(poly)?;
            if f.len() != 1 || f[0].1 != 1 {
                return Err(Error::InvalidInput(format!("{poly} is reducible; nontrivial factor {}", f[0].0)));
            }
            quotient_ring(format!("ℚ[x]/({poly})"), &poly.monic())
        }
        Preset::Product(ps) => {
            let mut it = ps.iter();
            let first = it.next().ok_or_else(|| Error::InvalidInput("empty product".into()))?;
            it.try_fold(preset(first)?, |acc, p| Ok::<_, Error>(acc.product(&preset(p)?)))?
        }
    };
    Ok(a.with_name(p.to_string()))
}

#[cfg(test)]
mod tests {
    use super::super::check_algebra;
    use super::*;

    #[test]
    fn presets_are_algebras() {
        for (s, _) in preset_catalog() {
            let p = parse_preset(s).unwrap();
            assert_eq!(p.to_string(), s);
            let a = preset(&p).unwrap();
            assert!(check_algebra(&a).passed(), "{s}");
        }
        assert_eq!(preset(&Preset::FullMatrix(2)).unwrap().dim(), 4);
        assert_eq!(preset(&Preset::NumberField(UniPoly::from_ints(&[-2, 0, 1]))).unwrap().dim(), 2);
        assert!(preset(&Preset::NumberField(UniPoly::from_ints(&[-1, 0, 1]))).is_err());
        assert!(parse_preset("nonsense").is_err());
        assert!(parse_preset("full_matrix").is_err());
        let h = preset(&Preset::Quaternion(-1, -1)).unwrap();
        // i·j = k and j·i = −k
        assert_eq!(h.structure_constant(1, 2, 3), q(1));
        assert_eq!(h.structure_constant(2, 1, 3), q(-1));
    }
}
