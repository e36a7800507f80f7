//! Existence checks, constructive solvers and witness certificates for
//! fractional `(g, f)`-factors of finite simple graphs, including the
//! "all fractional `(g, f)`-factors including a subgraph `H`" property.
//!
//! * [`graph`]: graphs, vertex functions, edge subgraphs, vertex sets and
//!   their text formats.
//! * [`conditions`]: deficiency functions and the pair-enumeration checkers.
//! * [`solver`]: half-integral factors by flow on the bipartite double cover.
//! * [`all_factors`]: the definition-level oracle over every `r` in `[g, f]`.
//! * [`oracle`]: seeded instance streams and the cross-check search.

pub mod all_factors;
pub mod conditions;
pub mod error;
pub mod flow;
pub mod graph;
pub mod oracle;
pub mod solver;

#[cfg(test)]
mod testing;

pub use all_factors::{
    all_factors_brute, enumerate_r, verify_equivalence, AllFactorsReport, DiscrepancyReport, FailingR,
    InstanceEcho, RFunctionSpace,
};
pub use conditions::{
    canonical_T, check_all_including, check_exists, check_sufficient, deficiency_all, deficiency_frac,
    minimal_witness_all, minimal_witness_frac, AllMode, CheckMode, CheckOptions, CheckReport, ExistsMode,
    Guards, Witness,
};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use graph::{
    deg_after_removal, edges_between, func_sum, parse_graph, parse_subgraph, parse_vertex_func,
    remove_edges, EdgeSource, EdgeSubgraph, Graph, Role, VertexFunc, VertexSet,
};
pub use oracle::{
    random_graph, random_instance, search_counterexample, BoundsRule, Check, Probability, SearchConfig,
    SearchReport, SplitMix64,
};
pub use solver::{
    complement_func, find_factor, including_feasible, solve_fractional_factor, solve_including,
    FactorViolation, FractionalFactor, Rational, Route, SolveOutcome,
};
