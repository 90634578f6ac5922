//! Zeroth-order general Randić index of oriented cacti.
//!
//! The crate evaluates the index on graphs and digraphs, searches the
//! orientations of a graph for the maximum, builds the extremal oriented
//! cacti, enumerates cacti up to isomorphism, and machine-checks the
//! extremal statements about them on every instance up to a given size.

pub mod cactus;
pub mod error;
pub mod graph;
pub mod index;
pub mod par;
pub mod report;
pub mod search;
pub mod verify;

pub use error::{Error, ParseIssue, Result};
pub use graph::{
    bipartition, canonical_label, cactus_profile, is_sink_source, orient, orient_mask, parse_digraph,
    parse_graph, reverse, validate, CanonicalLabel, Digraph, Graph,
};
pub use index::{index_digraph, index_graph, theorem_bound, vdb_index, Exponent, IndexValue, Mode, VdbFunction};
pub use par::Parallelism;
pub use search::{
    enumerate_orientations, max_orientation_bnb, max_orientation_exhaustive, sink_source_orientations,
    ExtremalResult, SearchOptions,
};
