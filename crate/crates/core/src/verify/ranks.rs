use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;

use serde_json::{json, Value};

use crate::cyclic::relative_cone_dims;
use crate::fdalgebra::{FdAlgebra, WedderburnData};

/// Where a number came from: a closed formula or an elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Oracle,
    Computed,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Oracle => "ORACLE",
            Provenance::Computed => "COMPUTED",
        })
    }
}

/// A rank split into its formula part and its computed part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankEntry {
    pub oracle: usize,
    pub computed: usize,
    /// Whether the computed part reached its stable range.
    pub stable: bool,
    pub uses_oracle: bool,
    pub uses_computation: bool,
}

impl RankEntry {
    pub fn oracle(v: usize) -> Self {
        RankEntry { oracle: v, computed: 0, stable: true, uses_oracle: true, uses_computation: false }
    }

    pub fn computed(v: usize, stable: bool) -> Self {
        RankEntry { oracle: 0, computed: v, stable, uses_oracle: false, uses_computation: true }
    }

    /// Contributes nothing and carries no provenance.
    pub fn nothing() -> Self {
        RankEntry { oracle: 0, computed: 0, stable: true, uses_oracle: false, uses_computation: false }
    }

    pub fn value(&self) -> usize {
        self.oracle + self.computed
    }

    pub fn plus(self, o: RankEntry) -> RankEntry {
        RankEntry {
            oracle: self.oracle + o.oracle,
            computed: self.computed + o.computed,
            stable: self.stable && o.stable,
            uses_oracle: self.uses_oracle || o.uses_oracle,
            uses_computation: self.uses_computation || o.uses_computation,
        }
    }

    pub fn provenance(&self) -> Vec<Provenance> {
        let mut out = Vec::new();
        if self.uses_oracle {
            out.push(Provenance::Oracle);
        }
        if self.uses_computation {
            out.push(Provenance::Computed);
        }
        out
    }

    pub fn provenance_label(&self) -> String {
        self.provenance().iter().map(ToString::to_string).collect::<Vec<_>>().join("+")
    }
}

/// Ranks by homological degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    pub name: String,
    entries: BTreeMap<i32, RankEntry>,
}

impl RankTable {
    pub fn new(name: impl Into<String>) -> Self {
        RankTable { name: name.into(), entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, i: i32, e: RankEntry) {
        self.entries.insert(i, e);
    }

    pub fn entry(&self, i: i32) -> Option<RankEntry> {
        self.entries.get(&i).copied()
    }

    pub fn value(&self, i: i32) -> Option<usize> {
        self.entry(i).map(|e| e.value())
    }

    pub fn entries(&self) -> impl Iterator<Item = (i32, RankEntry)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn values(&self) -> BTreeMap<i32, usize> {
        self.entries().map(|(k, e)| (k, e.value())).collect()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .entries()
            .map(|(i, e)| {
                json!({
                    "degree": i,
                    "rank": e.value(),
                    "oracle_part": e.oracle,
                    "computed_part": e.computed,
                    "stable": e.stable,
                    "provenance": e.provenance_label(),
                })
            })
            .collect();
        json!({"name": self.name, "entries": rows})
    }
}

/// Rank of `K_i(O_F) ⊗ ℝ` for a number field with signature `(r1, r2)`.
/// Negative degrees give 0.
pub fn borel_ranks(r1: usize, r2: usize, i: i32) -> usize {
    match i {
        i if i < 0 => 0,
        0 => 1,
        1 => (r1 + r2).saturating_sub(1),
        i if i % 2 == 0 => 0,
        i if i % 4 == 3 => r2,
        _ => r1 + r2,
    }
}

/// The note attached to degrees where the Borel table is not used.
pub fn borel_note(i: i32) -> Option<&'static str> {
    (i < 0).then_some("negative degree: rank 0 by convention")
}

/// Estimated column count of the top cone differential at truncation `n`.
fn cone_size(dim: usize, n: usize) -> usize {
    let nb = dim.saturating_sub(1).max(1);
    (0..=n / 2).map(|j| dim.saturating_mul(nb.saturating_pow((n - 2 * j) as u32))).fold(0, usize::saturating_add)
}

/// Largest top-degree block for which the relative cone is evaluated when the
/// truncation is raised automatically.
pub const CONE_BUDGET: usize = 40_000;

/// The Goodwillie correction `rank K_i(A, rad A) ⊗ ℚ`, read off the relative
/// cyclic cone; zero for semisimple algebras.
#[derive(Debug, Clone)]
pub struct RelativeTerm {
    dims: BTreeMap<i32, usize>,
    truncation: usize,
    semisimple: bool,
}

impl RelativeTerm {
    /// Evaluates the cone with truncation at least `requested`, raised up to
    /// `imax + 1` while the chain groups stay within [`CONE_BUDGET`].
    pub fn compute(a: &FdAlgebra, w: &WedderburnData, imax: i32, requested: usize) -> crate::Result<Self> {
        if w.is_semisimple() {
            return Ok(RelativeTerm { dims: BTreeMap::new(), truncation: usize::MAX, semisimple: true });
        }
        let wanted = (imax.max(0) + 1) as usize;
        let mut n = requested;
        while n < wanted && cone_size(a.dim(), n + 1) <= CONE_BUDGET {
            n += 1;
        }
        let t = relative_cone_dims(a, n)?;
        Ok(RelativeTerm { dims: t.entries().map(|(k, e)| (k, e.dim)).collect(), truncation: n, semisimple: false })
    }

    pub fn is_zero_by_semisimplicity(&self) -> bool {
        self.semisimple
    }

    /// Truncation used; `None` when no cone was needed.
    pub fn truncation(&self) -> Option<usize> {
        (!self.semisimple).then_some(self.truncation)
    }

    /// The correction in degree `i`, `None` above the truncation.
    pub fn at(&self, i: i32) -> Option<usize> {
        if self.semisimple || i < 0 {
            return Some(0);
        }
        self.dims.get(&i).copied()
    }

    pub fn entry(&self, i: i32) -> RankEntry {
        if self.semisimple {
            return RankEntry::nothing();
        }
        if i < 0 {
            return RankEntry::oracle(0);
        }
        match self.at(i) {
            Some(v) => RankEntry::computed(v, true),
            None => RankEntry::computed(0, false),
        }
    }
}

/// `Σ_f borel(r1_f, r2_f, i)` over the simple factors.
fn semisimple_rank(w: &WedderburnData, i: i32) -> usize {
    w.factors.iter().map(|f| borel_ranks(f.r1, f.r2, i)).sum()
}

/// `rank K_i(A) ⊗ ℝ` for `i` in `degrees`: Borel on the factors plus the
/// relative term.
pub fn k_ranks(w: &WedderburnData, rel: &RelativeTerm, degrees: RangeInclusive<i32>) -> RankTable {
    let mut t = RankTable::new("K");
    for i in degrees {
        t.insert(i, RankEntry::oracle(semisimple_rank(w, i)).plus(rel.entry(i)));
    }
    t
}

/// `rank K′_d(A)_ℝ` for `d = −i`, `i` in `degrees`; equal to the Borel ranks
/// of `Aˢˢ` in degree `i`.
pub fn kprime_ranks(w: &WedderburnData, degrees: RangeInclusive<i32>) -> RankTable {
    let mut t = RankTable::new("K'");
    for i in degrees {
        t.insert(-i, RankEntry::oracle(semisimple_rank(w, i)));
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fdalgebra::{factor_data, parse_preset, preset, Preset};

    fn data(p: Preset) -> (FdAlgebra, WedderburnData) {
        let a = preset(&p).unwrap();
        let w = factor_data(&a, 0).unwrap();
        (a, w)
    }

    #[test]
    fn borel_table() {
        assert_eq!(borel_ranks(1, 0, 5), 1);
        assert_eq!(borel_ranks(0, 1, 3), 1);
        assert_eq!(borel_ranks(1, 0, 1), 0);
        for (r1, r2) in [(1, 0), (2, 3), (0, 2)] {
            assert_eq!(borel_ranks(r1, r2, 4), 0);
            assert_eq!(borel_ranks(r1, r2, 0), 1);
            assert_eq!(borel_ranks(r1, r2, -3), 0);
        }
        assert_eq!(borel_ranks(2, 1, 9), 3);
        assert_eq!(borel_ranks(2, 1, 7), 1);
        assert!(borel_note(-1).is_some());
        assert!(borel_note(0).is_none());
    }

    #[test]
    fn k_rank_examples() {
        let (a, w) = data(parse_preset("number_field:x^2+1").unwrap());
        let rel = RelativeTerm::compute(&a, &w, 9, 6).unwrap();
        assert_eq!(k_ranks(&w, &rel, 3..=3).value(3), Some(1));
        let (a, w) = data(Preset::GroupAlgebra("S3".into()));
        let rel = RelativeTerm::compute(&a, &w, 9, 6).unwrap();
        let k = k_ranks(&w, &rel, 0..=9);
        assert_eq!(k.value(5), Some(3));
        assert_eq!(k.entry(5).unwrap().provenance(), vec![Provenance::Oracle]);
        let (a, w) = data(Preset::DualNumbers);
        let rel = RelativeTerm::compute(&a, &w, 9, 6).unwrap();
        assert_eq!(rel.truncation(), Some(10));
        let k = k_ranks(&w, &rel, -2..=9);
        assert_eq!(k.value(0), Some(1));
        assert_eq!(k.value(-1), Some(0));
        for i in 1..=9 {
            assert_eq!(k.value(i), Some(borel_ranks(1, 0, i) + (i % 2) as usize), "K_{i}(ℚ[ε])");
            assert!(k.entry(i).unwrap().stable);
        }
        assert_eq!(k.entry(3).unwrap().provenance_label(), "ORACLE+COMPUTED");
        assert_eq!(k.value(3), Some(1));
        assert_eq!(k.value(5), Some(2));
    }

    #[test]
    fn kprime_examples() {
        let (_, q) = data(Preset::Rational);
        let (_, dual) = data(Preset::DualNumbers);
        assert_eq!(kprime_ranks(&dual, -2..=10), kprime_ranks(&q, -2..=10));
        let (_, t2) = data(Preset::UpperTriangular(2));
        let kp = kprime_ranks(&t2, -2..=10);
        let base = kprime_ranks(&q, -2..=10);
        for (d, e) in kp.entries() {
            assert_eq!(e.value(), 2 * base.value(d).unwrap());
        }
        assert_eq!(kp.value(-5), Some(2));
        assert_eq!(kp.value(0), Some(2));
    }
}
