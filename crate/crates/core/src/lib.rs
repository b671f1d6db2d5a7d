//! Biclique partitions and covers measured against chromatic number.
//!
//! * [`graph`]: graphs, bicliques, systems, partition/cover validation.
//! * [`coloring`]: staged coloring of edge-disjoint biclique unions.
//! * [`hansel`]: independent sets from covers by side deletion.
//! * [`peeling`]: iterated extraction with per-round accounting.
//! * [`oracles`]: exact solvers used as ground truth.
//! * [`generators`]: complete, multipartite, star, code and random instances.
//! * [`cli`]: the `biclique` command-line front end.

pub mod bitset;
pub mod cli;
pub mod coloring;
pub mod dyadic;
pub mod format;
pub mod generators;
pub mod graph;
pub mod hansel;
pub mod oracles;
pub mod peeling;
pub mod report;

pub use bitset::VertexSet;
pub use coloring::{
    canonical_side, colors_bound, invert_bound, mv_color, theorem1_bound, verify_proper, ColorSequence, Coloring,
    MvRun, RefinementGroup,
};
pub use dyadic::Dyadic;
pub use graph::{cuts, Biclique, BicliqueSystem, CoverStats, Edge, Graph, GraphError, Side};
pub use hansel::{
    derandomized_extract, enumerate_mean_survivors, expected_survivors, hansel_lower_bound, randomized_extract,
    ExtractionResult,
};
pub use oracles::{
    chromatic_number, independence_number, min_biclique_partition, min_cover_weight, OracleError, OracleLimits,
};
pub use peeling::{analyze_trace, peel, theorem3_bound, PeelTrace};
