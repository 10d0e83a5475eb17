//! Regular bipartite graphs built from compatible permutations.
//!
//! An `(m, r)` Balanced Tanner Unit (BTU) is an `m x m` 0/1 matrix with `r`
//! ones per row and column, held as `r` pairwise disjoint permutations. This
//! crate provides the permutation algebra ([`perm`]), the BTU model and its
//! interchange formats ([`btu`]), an exact girth engine with a brute-force
//! oracle ([`girth`]), the enumeration search for girth-maximum `(b·k², 3)`
//! BTUs ([`search`]) and the order/girth bound calculators ([`bounds`],
//! rendered by [`tables`]).

pub mod bounds;
pub mod btu;
pub mod girth;
pub mod perm;
pub mod search;
pub mod tables;

pub use bounds::{BoundReport, BoundsError, FactorizationResult};
pub use btu::io::{FormatError, GraphFormat};
pub use btu::{BinaryMatrix, BipartiteGraph, Btu, BtuError};
pub use girth::{girth_bfs, girth_oracle, Girth, GirthError, GirthResult};
pub use perm::{CycleType, PermError, Permutation, ScalingStrategy};
pub use search::{search_r3, SearchConfig, SearchError, SearchResult};

/// Any error raised by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Btu(#[from] BtuError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Girth(#[from] GirthError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}
