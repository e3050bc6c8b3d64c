//! eindlab: a workbench for edge-inducibility experiments.
//!
//! The crate provides simple graphs with exact induced-copy counting,
//! locally directed graphs (multigraphs with a sign per vertex-edge
//! incidence) with acyclicity and topological sorting, fractional
//! matchings over exact rationals, extremal host constructions, exact
//! Shannon-entropy inequality checks, and exhaustive small-case oracles.

pub mod canon;
pub mod constructions;
pub mod counting;
pub mod entropy;
pub mod error;
pub mod fractional;
pub mod gen;
pub mod graph;
pub mod local;
pub mod search;

pub use canon::{aut_order, canonical_form, graphs_isomorphic, CanonicalForm};
pub use counting::{
    count_copies, count_embeddings, count_induced_copies, count_induced_embeddings, dp3_stats,
    eind_ratio, eind_ratio_blowup, eind_ratio_squared, ldp3_ab_bound, perfect_matching_count,
    pm_count_bound, trivial_upper_bound, BlowupHost, Dp3Stats, ForwardDag, LdpAbBound,
    TrivialBound,
};
pub use error::{InvalidInput, LimitError, MatchingError, ParseError};
pub use fractional::{
    alpha_star, is_unique_fpm, is_unique_fpm_oracle, max_fractional_matching,
    perturbation_witness, FractionalWeighting, VertexWeighting,
};
pub use graph::{Graph, Matching};
pub use local::{
    canonical_local_form, count_induced_local, double_cover, edge_localdigraph,
    find_locally_directed_closed_walk, graphify, is_ldag, ldg, local_iso, topological_sort,
    LdEdge, LocalDigraph, LocallyDirectedWalk, MultiDigraph, Sign, TopologicalSort,
};
