//! Rank oracles on the K-theory side, the ι-fixed middle term on the Hodge
//! side, and the degree-by-degree bookkeeping of the triangle joining them.

mod middle;
mod ranks;
mod triangle;

pub use middle::{
    direct_truncation, fixed_dim_of, middle_dims_direct, middle_dims_reduced, KstModel, MiddlePath, TWIST_MARGIN,
};
pub use ranks::{
    borel_note, borel_ranks, k_ranks, kprime_ranks, Provenance, RankEntry, RankTable, RelativeTerm, CONE_BUDGET,
};
pub use triangle::{
    verify_algebra, verify_triangle, DegreeRow, DirichletCheck, RankProfile, TriangleReport, Verdict, VerifyOptions,
    DEGREE_MIN,
};
