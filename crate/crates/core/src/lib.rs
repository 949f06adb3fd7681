//! Exact path-chromatic number toolkit.
//!
//! * [`graph`], [`connectivity`]: simple graphs on bitset adjacency.
//! * [`coloring`]: exact colouring of graphs and of vertex subsets.
//! * [`decomposition`]: enumerations, path/tree decompositions, validation.
//! * [`dp`]: the subset DP deciding `χ_P(G) <= k`, plus a factorial oracle.
//! * [`constructions`]: `R_m(G)`, Mycielski graphs and their certificates.
//! * [`io`], [`corpus`]: file formats and seeded test corpora.

pub mod coloring;
pub mod connectivity;
pub mod constructions;
pub mod corpus;
pub mod decomposition;
pub mod dp;
pub mod error;
pub mod graph;
pub mod io;
pub mod parallel;
pub mod vertex_set;

pub use coloring::{chromatic_decision, chromatic_number, greedy_bound, BagChromatic, Coloring};
pub use connectivity::{connectivity_with_cut, vertex_connectivity};
pub use constructions::{
    embed_into_block, mu_enumeration, mycielski, mycielski_embedding, r_product,
    star_decomposition_rm_cycle, Base, RProduct, RmLabel,
};
pub use decomposition::{
    decomposition_chromatic_number, enumeration_from_path_decomposition, is_special_enumeration,
    path_decomposition_from_enumeration, validate_tree_decomposition, Decomposition, Enumeration,
    PathDecomposition, TreeDecomposition, Violation,
};
pub use dp::{
    bag_of_prefix, brute_force_path_chromatic, exists_special_enumeration, path_chromatic_at_most,
    path_chromatic_number, DpConfig, DpReport,
};
pub use error::{Error, Result};
pub use graph::{make_complete, make_cycle, Graph};
pub use parallel::Execution;
pub use vertex_set::VertexSet;
