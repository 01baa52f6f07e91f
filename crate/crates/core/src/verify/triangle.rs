use std::fmt;

use serde_json::{json, Value};

use super::middle::{direct_truncation, middle_dims_direct, middle_dims_reduced, KstModel, MiddlePath, TWIST_MARGIN};
use super::ranks::{borel_note, k_ranks, kprime_ranks, RankEntry, RankTable, RelativeTerm};
use crate::fdalgebra::{factor_data, FdAlgebra, WedderburnData};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub imax: i32,
    pub truncation: usize,
    pub seed: u64,
    pub path: MiddlePath,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { imax: 9, truncation: 6, seed: 0, path: MiddlePath::Both }
    }
}

/// Lowest degree in every report.
pub const DEGREE_MIN: i32 = -2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Provisional,
}

impl Verdict {
    fn and(self, o: Verdict) -> Verdict {
        match (self, o) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Provisional, _) | (_, Verdict::Provisional) => Verdict::Provisional,
            _ => Verdict::Pass,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Provisional => "PROVISIONAL",
        })
    }
}

/// `K_i(A)`, the ι-fixed middle term and `K′_{i−1}(A)` in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: i32,
    pub left: RankEntry,
    pub middle: RankEntry,
    pub right: RankEntry,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// The three rank tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    pub k_ranks: RankTable,
    pub kprime_ranks: RankTable,
    pub middle_dims: RankTable,
}

/// `(K, middle, K′)` dims of the two short sequences of a number field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletCheck {
    pub degree0: [usize; 3],
    pub degree1: [usize; 3],
    pub expected0: [usize; 3],
    pub expected1: [usize; 3],
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct TriangleReport {
    pub algebra: String,
    pub algebra_dim: usize,
    pub wedderburn: WedderburnData,
    pub options: VerifyOptions,
    pub profile: RankProfile,
    /// DIRECT table when requested and supported.
    pub direct: Option<RankTable>,
    /// Why DIRECT was not evaluated.
    pub direct_note: Option<String>,
    pub kst: KstModel,
    pub relative_truncation: Option<usize>,
    pub rows: Vec<DegreeRow>,
    /// Signed `L₁ + R₁ − M₁`; valid when it lies in `[0, min(R₁, L₀)]`.
    pub delta_rank: i64,
    pub dirichlet: Option<DirichletCheck>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

fn entry(t: &RankTable, i: i32) -> RankEntry {
    t.entry(i).unwrap_or_else(RankEntry::nothing)
}

fn status(ok: bool, stable: bool) -> Verdict {
    match (ok, stable) {
        (_, false) => Verdict::Provisional,
        (true, true) => Verdict::Pass,
        (false, true) => Verdict::Fail,
    }
}

/// Runs the full pipeline with the given options.
pub fn verify_algebra(a: &FdAlgebra, opts: &VerifyOptions) -> Result<TriangleReport> {
    let w = factor_data(a, opts.seed)?;
    verify_triangle(a, &w, opts)
}

/// Dimension bookkeeping of the triangle `K(A) → middle → K′(A)[1]` in degrees
/// `−2..=imax`.
pub fn verify_triangle(a: &FdAlgebra, w: &WedderburnData, opts: &VerifyOptions) -> Result<TriangleReport> {
    if opts.imax < 1 {
        return Err(Error::InvalidInput(format!("imax must be at least 1, got {}", opts.imax)));
    }
    let degrees = DEGREE_MIN..=opts.imax;
    let rel = RelativeTerm::compute(a, w, opts.imax, opts.truncation)?;
    let k = k_ranks(w, &rel, degrees.clone());
    let kprime = kprime_ranks(w, (1 - opts.imax).min(DEGREE_MIN)..=opts.imax + 1 - DEGREE_MIN);
    let mut notes = vec![
        "K of each simple factor is read through its center's signature (Borel)".to_string(),
        "K′ is computed through the semisimple quotient (devissage)".to_string(),
        "the stable K-theory of A ⊗ ℂ is modeled by ℚ^S[β, β⁻¹] with ι(β) = −β".to_string(),
        format!("twist window ⌈n/2⌉ ± {TWIST_MARGIN}"),
    ];
    if let Some(n) = rel.truncation() {
        notes.push(format!("relative term from the cyclic cone at truncation {n}"));
    }
    if let Some(s) = borel_note(DEGREE_MIN) {
        notes.push(s.to_string());
    }
    let reduced =
        if opts.path == MiddlePath::Direct { None } else { Some(middle_dims_reduced(w, &rel, degrees.clone())?) };
    let (direct, direct_note) = match opts.path {
        MiddlePath::Reduced => (None, None),
        MiddlePath::Direct => (Some(middle_dims_direct(a, w, &rel, degrees.clone())?), None),
        MiddlePath::Both => match middle_dims_direct(a, w, &rel, degrees.clone()) {
            Ok(t) => (Some(t), None),
            Err(Error::Unsupported(msg)) => (None, Some(msg)),
            Err(e) => return Err(e),
        },
    };
    if direct.is_some() {
        notes.push(format!("DIRECT path cyclic truncation {}", direct_truncation(w)));
    }
    let middle = reduced.clone().or_else(|| direct.clone()).expect("some path evaluated");
    let rows_k: Vec<(i32, RankEntry, RankEntry, RankEntry)> =
        degrees.clone().map(|i| (i, entry(&k, i), entry(&middle, i), entry(&kprime, i - 1))).collect();
    let get = |i: i32| rows_k.iter().find(|r| r.0 == i).expect("degree in window");
    let (l0, m0, r0) = (get(0).1.value() as i64, get(0).2.value() as i64, get(0).3.value() as i64);
    let (l1, m1, r1) = (get(1).1.value() as i64, get(1).2.value() as i64, get(1).3.value() as i64);
    let delta = l1 + r1 - m1;
    let delta_ok = (0..=r1.min(l0)).contains(&delta) && m0 == l0 + r0 - delta;
    let dirichlet = number_field_signature(a, w).map(|(r1f, r2f)| {
        let u = r1f + r2f;
        let expected0 = [1, u, u - 1];
        let expected1 = [u - 1, u, 1];
        let degree0 = [l0 as usize, m0 as usize, r0 as usize];
        let degree1 = [l1 as usize, m1 as usize, r1 as usize];
        let passed = degree0 == expected0 && degree1 == expected1 && delta == 0;
        DirichletCheck { degree0, degree1, expected0, expected1, passed }
    });
    let mut rows = Vec::new();
    for &(i, left, mid, right) in &rows_k {
        let stable = left.stable && mid.stable && right.stable;
        let mut row_notes = Vec::new();
        let ok = match i {
            i if i >= 2 => left.value() == mid.value() && right.value() == 0,
            i if i <= -1 => left.value() == 0 && mid.value() == right.value(),
            _ => {
                if !delta_ok {
                    row_notes.push(format!("no admissible δ (L₁ + R₁ − M₁ = {delta})"));
                }
                let dir_ok = dirichlet.as_ref().is_none_or(|d| d.passed);
                if !dir_ok {
                    row_notes.push("Dirichlet dims differ".into());
                }
                delta_ok && dir_ok
            }
        };
        let mut verdict = status(ok, stable);
        if let (Some(r), Some(d)) = (&reduced, &direct) {
            if r.value(i) != d.value(i) {
                row_notes.push(format!("paths disagree: reduced {:?}, direct {:?}", r.value(i), d.value(i)));
                verdict = Verdict::Fail;
            }
        }
        if !stable {
            row_notes.push("relative term above the truncation".into());
        }
        rows.push(DegreeRow { degree: i, left, middle: mid, right, verdict, notes: row_notes });
    }
    let verdict = rows.iter().fold(Verdict::Pass, |acc, r| acc.and(r.verdict));
    Ok(TriangleReport {
        algebra: a.name().to_string(),
        algebra_dim: a.dim(),
        wedderburn: w.clone(),
        options: opts.clone(),
        profile: RankProfile { k_ranks: k, kprime_ranks: kprime, middle_dims: middle },
        direct,
        direct_note,
        kst: KstModel::new(w),
        relative_truncation: rel.truncation(),
        rows,
        delta_rank: delta,
        dirichlet,
        verdict,
        notes,
    })
}

/// `(r1, r2)` when `A` is a field.
fn number_field_signature(a: &FdAlgebra, w: &WedderburnData) -> Option<(usize, usize)> {
    match w.factors.as_slice() {
        [f] if w.is_semisimple() && f.d == a.dim() => Some((f.r1, f.r2)),
        _ => None,
    }
}

fn entry_json(e: &RankEntry) -> Value {
    json!({"rank": e.value(), "provenance": e.provenance_label(), "stable": e.stable})
}

impl TriangleReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn row(&self, i: i32) -> Option<&DegreeRow> {
        self.rows.iter().find(|r| r.degree == i)
    }

    pub fn to_json(&self) -> Value {
        let per_degree: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "degree": r.degree,
                    "K": entry_json(&r.left),
                    "middle": entry_json(&r.middle),
                    "K'_shifted": entry_json(&r.right),
                    "verdict": r.verdict.to_string(),
                    "notes": r.notes,
                })
            })
            .collect();
        json!({
            "algebra": {"name": self.algebra, "dim": self.algebra_dim},
            "wedderburn": self.wedderburn.to_json(),
            "tables": {
                "k": self.profile.k_ranks.to_json(),
                "kprime": self.profile.kprime_ranks.to_json(),
                "middle": self.profile.middle_dims.to_json(),
                "middle_direct": self.direct.as_ref().map(RankTable::to_json),
            },
            "triangle": {
                "per_degree": per_degree,
                "delta_rank": self.delta_rank,
                "dirichlet": self.dirichlet.as_ref().map(|d| json!({
                    "degree0": d.degree0, "degree1": d.degree1,
                    "expected0": d.expected0, "expected1": d.expected1, "passed": d.passed,
                })),
                "verdict": self.verdict.to_string(),
            },
            "provenance": {
                "notes": self.notes,
                "path": self.options.path.to_string(),
                "direct_note": self.direct_note,
                "imax": self.options.imax,
                "truncation": self.options.truncation,
                "relative_truncation": self.relative_truncation,
                "seed": self.options.seed,
                "kst": self.kst.to_json(),
            },
        })
    }
}

impl fmt::Display for TriangleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {} (dim {})", self.algebra, self.algebra_dim)?;
        writeln!(
            f,
            "radical dim {}, {} simple factor(s), center dim {}",
            self.wedderburn.radical_dim(),
            self.wedderburn.factors.len(),
            self.wedderburn.center_dim()
        )?;
        writeln!(f, "{:>4}  {:>18}  {:>18}  {:>18}  verdict", "i", "K_i", "middle_i", "K'_{i-1}")?;
        for r in &self.rows {
            let cell = |e: &RankEntry| format!("{} {}", e.value(), e.provenance_label());
            writeln!(
                f,
                "{:>4}  {:>18}  {:>18}  {:>18}  {}{}",
                r.degree,
                cell(&r.left),
                cell(&r.middle),
                cell(&r.right),
                r.verdict,
                if r.notes.is_empty() { String::new() } else { format!("  ({})", r.notes.join("; ")) }
            )?;
        }
        writeln!(f, "delta rank: {}", self.delta_rank)?;
        if let Some(d) = &self.dirichlet {
            writeln!(
                f,
                "Dirichlet: degree 0 {:?} (expected {:?}), degree 1 {:?} (expected {:?})",
                d.degree0, d.expected0, d.degree1, d.expected1
            )?;
        }
        match (&self.direct, &self.direct_note) {
            (Some(_), _) => writeln!(f, "direct path: evaluated")?,
            (None, Some(n)) => writeln!(f, "direct path: not evaluated ({n})")?,
            (None, None) => {}
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalgebra::{parse_preset, preset};

    fn run(p: &str, path: MiddlePath) -> TriangleReport {
        let a = preset(&parse_preset(p).unwrap()).unwrap();
        verify_algebra(&a, &VerifyOptions { path, ..Default::default() }).unwrap()
    }

    #[test]
    fn rational_passes() {
        let r = run("rational", MiddlePath::Both);
        assert_eq!(r.verdict, Verdict::Pass, "{r}");
        assert_eq!(r.delta_rank, 0);
        assert!(r.direct.is_some());
    }

    #[test]
    fn real_quadratic_dirichlet() {
        let r = run("number_field:x^2-2", MiddlePath::Both);
        let d = r.dirichlet.clone().unwrap();
        assert_eq!(d.degree0, [1, 2, 1]);
        assert_eq!(d.degree1, [1, 2, 1]);
        assert_eq!(r.delta_rank, 0);
        assert!(r.passed(), "{r}");
        assert!(r.direct_note.is_some());
    }

    #[test]
    fn dual_numbers_pass() {
        let r = run("dual_numbers", MiddlePath::Both);
        assert!(r.passed(), "{r}");
        assert_eq!(r.row(3).unwrap().left.value(), 1);
        assert_eq!(r.row(5).unwrap().left.value(), 2);
        assert_eq!(r.row(5).unwrap().middle.value(), 2);
    }

    #[test]
    fn explicit_direct_outside_family() {
        let a = preset(&parse_preset("group_algebra:C3").unwrap()).unwrap();
        let opts = VerifyOptions { path: MiddlePath::Direct, ..Default::default() };
        assert!(matches!(verify_algebra(&a, &opts), Err(Error::Unsupported(_))));
    }
}
