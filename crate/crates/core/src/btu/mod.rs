//! Balanced Tanner Units.
//!
//! An `(m, r)` BTU is an `m x m` 0/1 matrix with `r` ones in every row and
//! column, stored as the ordered list of `r` pairwise compatible permutations
//! whose permutation matrices sum to it. Row `i` has its ones in the columns
//! `perms[t](i)`.

mod graph;
pub mod io;
mod matrix;

pub use graph::{BipartiteGraph, GraphError};
pub use matrix::BinaryMatrix;

use thiserror::Error;

use crate::perm::{PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BtuError {
    #[error("a BTU needs at least one permutation")]
    Empty,
    #[error("permutation {index} has size {found}, expected {expected}")]
    SizeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("permutations {a} and {b} collide at position {position}")]
    IncompatiblePermutations { position: usize, a: usize, b: usize },
    #[error("constituent index {index} out of range for r = {r}")]
    IndexOutOfRange { index: usize, r: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Btu {
    m: usize,
    perms: Vec<Permutation>,
}

impl Btu {
    /// Validates sizes and pairwise compatibility; order is kept as given.
    pub fn from_permutations(perms: Vec<Permutation>) -> Result<Btu, BtuError> {
        let m = perms.first().ok_or(BtuError::Empty)?.size();
        for (index, p) in perms.iter().enumerate() {
            if p.size() != m {
                return Err(BtuError::SizeMismatch {
                    index,
                    expected: m,
                    found: p.size(),
                });
            }
        }
        if let Some((position, a, b)) = first_collision(&perms) {
            return Err(BtuError::IncompatiblePermutations { position, a, b });
        }
        Ok(Btu { m, perms })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn into_perms(self) -> Vec<Permutation> {
        self.perms
    }

    pub fn to_bipartite(&self) -> BipartiteGraph {
        let lists = (0..self.m)
            .map(|i| {
                let mut row: Vec<usize> = self.perms.iter().map(|p| p.apply(i)).collect();
                row.sort_unstable();
                row
            })
            .collect();
        BipartiteGraph::from_left_lists_unchecked(self.m, lists)
    }

    pub fn to_matrix(&self) -> BinaryMatrix {
        BinaryMatrix::from_btu(self)
    }

    /// Order-insensitive comparison: same underlying 0/1 matrix.
    pub fn same_matrix(&self, other: &Btu) -> bool {
        self.m == other.m && self.to_matrix() == other.to_matrix()
    }

    /// Permutes rows by `row_perm` and columns by `col_perm`.
    ///
    /// Row `i` moves to `row_perm(i)` and column `c` to `col_perm(c)`, so each
    /// constituent `p` becomes `col_perm ∘ p ∘ row_perm⁻¹`.
    pub fn relabel(&self, row_perm: &Permutation, col_perm: &Permutation) -> Result<Btu, BtuError> {
        for (index, q) in [row_perm, col_perm].into_iter().enumerate() {
            if q.size() != self.m {
                return Err(BtuError::SizeMismatch {
                    index,
                    expected: self.m,
                    found: q.size(),
                });
            }
        }
        let row_inv = row_perm.inverse();
        let perms = self
            .perms
            .iter()
            .map(|p| col_perm.compose(&p.compose(&row_inv)?))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Btu { m: self.m, perms })
    }

    /// Relabels rows so that constituent `t` becomes the identity.
    pub fn normalize_to_identity(&self, t: usize) -> Result<Btu, BtuError> {
        let target = self.perms.get(t).ok_or(BtuError::IndexOutOfRange {
            index: t,
            r: self.r(),
        })?;
        self.relabel(target, &Permutation::identity(self.m)?)
    }
}

/// First `(position, a, b)` with `perms[a](position) == perms[b](position)`.
pub(crate) fn first_collision(perms: &[Permutation]) -> Option<(usize, usize, usize)> {
    let m = perms.first()?.size();
    for i in 0..m {
        for b in 1..perms.len() {
            let v = perms[b].apply(i);
            if let Some(a) = perms[..b].iter().position(|p| p.apply(i) == v) {
                return Some((i, a, b));
            }
        }
    }
    None
}
