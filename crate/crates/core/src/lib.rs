//! Low-weight perfect matchings in complete graphs whose edges carry a sign
//! in {-1, +1}.
//!
//! The crate is organized bottom-up:
//!
//! - [`graph`], [`matching`] and [`format`] hold the immutable instance types,
//!   weight arithmetic and the `signed-k` text format.
//! - [`solver`] contains the exchange local search, the exact enumeration
//!   oracle and a blossom maximum-matching routine for sign subgraphs.
//! - [`constructions`] generates the extremal instance families, balanced and
//!   imbalanced random instances, and the closed-form bounds.
//! - [`verify`] ties everything together into reproducible theorem sweeps.
//!
//! All randomness goes through [`rng`], which pins ChaCha8 seeded from a
//! 64-bit value so that corpora are reproducible.

pub mod constructions;
pub mod error;
pub mod format;
pub mod graph;
pub mod matching;
pub mod rng;
pub mod solver;
pub mod verify;

pub use constructions::{
    clique_instance, eg_edge_bound, eg_extremal_graph, proposition2_instance,
    random_with_imbalance, thm2_bound, BoundQuery,
};
pub use error::{Error, Result};
pub use format::{parse_instance, parse_matching, serialize_instance, serialize_matching};
pub use graph::{canonical_pair_index, Sign, SignedCompleteGraph};
pub use matching::{Edge, PerfectMatching};
pub use solver::blossom::SimpleGraph;
pub use solver::exchange::{apply_exchange, enumerate_exchanges, Exchange};
pub use solver::oracle::{oracle_min_weight, OracleResult, DEFAULT_ORACLE_LIMIT, MAX_ORACLE_LIMIT};
pub use solver::search::{
    local_search_min_weight, Improvement, SearchPolicy, SolveReport, Start,
};
pub use solver::{max_matching, pm_from_sign_max_matching};
pub use verify::{VerifyReport, TheoremId};

/// Signed weight of an edge set. Perfect matchings of `K_{4n}` always have
/// an even weight.
pub type Weight = i64;
