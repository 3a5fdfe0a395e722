//! Edge colorings of complete graphs and the structure theory around
//! rainbow-triangle-free ("Gallai") colorings: pattern detection, Gallai
//! partitions and reduced graphs, closed-form Ramsey-type bounds, witness
//! constructions, local search, and exact exhaustive enumeration.

// Parity branches are written k % 2 == 0 to mirror the even/odd case splits
// they implement.
#![allow(clippy::manual_is_multiple_of)]

pub mod bitset;
pub mod bounds;
mod canon;
pub mod coloring;
pub mod construct;
pub mod ecg;
pub mod error;
pub mod local_search;
pub mod partition;
pub mod pattern;
pub mod search;

pub use bounds::{BoundKind, BoundResult};
pub use coloring::{
    pair_count, pair_index, substitute, ColorClassGraph, ColorClassification, ColorRole,
    EdgeColoring, PaletteMap, Role, MAX_COLORS, MAX_VERTICES,
};
pub use construct::{GrTowerWitness, WitnessRecipe};
pub use error::{Error, Result};
pub use local_search::local_search_witness;
pub use partition::{GallaiPartition, PartitionValidity, ReducedGraph};
pub use pattern::{
    count_violations, find_mono, has_rainbow_triangle, is_pancyclic, is_present,
    is_vertex_pancyclic, validate_hit, PatternHit, PatternSpec, Scope, Shape,
};
pub use search::{
    compute_gallai_ramsey, compute_ramsey, enumerate_exhaustive, RamseyComputation,
    RamseyResolution, SearchLimits, SearchOutcome, SearchStats, SearchStatus, SearchTask,
};
