//! Exact permanents of graph Laplacians, Laplacian ratios of trees, and an
//! exhaustive search for the trees minimizing the ratio under a diameter
//! constraint.
//!
//! The Laplacian ratio of a graph `G` is `pi(G) = per L(G) / PD(G)`, where
//! `L(G) = D(G) - A(G)` and `PD(G)` is the product of the vertex degrees.
//! Everything here is exact: integers are unbounded, ratios are reduced
//! rationals, and the closed-form bound for brooms is evaluated in
//! `Q(sqrt 2)`.

pub mod arith;
pub mod canon;
pub mod enumeration;
pub mod error;
pub mod expansion;
pub mod families;
pub mod graph;
pub mod matching;
pub mod permanent;
pub mod random;
pub mod report;
pub mod transforms;
pub mod verify;

pub use arith::{rational_to_string, BigInt, BigRational, Sqrt2Ext};
pub use canon::{canonical_code, CanonicalCode};
pub use enumeration::{
    enumerate_trees, extremal_search, permanent_extremal_search, ExtremalReport, Objective,
    SearchOptions,
};
pub use error::{Error, Result};
pub use families::{broom, broom_pd, broom_permanent, pell_q, theorem_bound, FamilySpec};
pub use graph::{Graph, IntMatrix, LaplacianMatrix, Tree};
pub use matching::{laplacian_ratio, matching_number, matching_weights, tree_permanent};
pub use permanent::{PermanentEngine, PermanentValue, DEFAULT_ORDER_CAP};
pub use verify::{verify, Claim, Counterexample, VerifyOptions, VerifySummary};
