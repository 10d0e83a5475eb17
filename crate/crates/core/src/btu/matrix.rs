use super::io::FormatError;
use super::{BipartiteGraph, Btu};
use crate::perm::Permutation;

/// Sparse 0/1 matrix, one sorted column-index list per row.
///
/// This is the authoritative object for interchange: any regular square
/// matrix can be turned back into a [`Btu`], but not uniquely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    row_lists: Vec<Vec<usize>>,
}

impl BinaryMatrix {
    /// Lists are sorted and deduplicated; out-of-range columns are rejected.
    pub fn new(cols: usize, mut row_lists: Vec<Vec<usize>>) -> Option<Self> {
        for row in &mut row_lists {
            row.sort_unstable();
            row.dedup();
            if row.last().is_some_and(|&c| c >= cols) {
                return None;
            }
        }
        Some(BinaryMatrix {
            rows: row_lists.len(),
            cols,
            row_lists,
        })
    }

    pub fn from_btu(b: &Btu) -> Self {
        let row_lists = (0..b.m())
            .map(|i| {
                let mut row: Vec<usize> = b.perms().iter().map(|p| p.apply(i)).collect();
                row.sort_unstable();
                row
            })
            .collect();
        BinaryMatrix {
            rows: b.m(),
            cols: b.m(),
            row_lists,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.row_lists[i]
    }

    pub fn get(&self, i: usize, c: usize) -> bool {
        self.row_lists[i].binary_search(&c).is_ok()
    }

    pub fn col_lists(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (i, row) in self.row_lists.iter().enumerate() {
            for &c in row {
                cols[c].push(i);
            }
        }
        cols
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        self.row_lists.iter().map(Vec::len).collect()
    }

    pub fn col_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.cols];
        for &c in self.row_lists.iter().flatten() {
            d[c] += 1;
        }
        d
    }

    pub fn nnz(&self) -> usize {
        self.row_lists.iter().map(Vec::len).sum()
    }

    /// `Some(r)` when square with every row and column weight equal to `r`.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let r = self.row_lists[0].len();
        let uniform = |d: &[usize]| d.iter().all(|&x| x == r);
        (uniform(&self.row_degrees()) && uniform(&self.col_degrees())).then_some(r)
    }

    pub fn to_bipartite(&self) -> BipartiteGraph {
        BipartiteGraph::from_left_lists_unchecked(self.cols, self.row_lists.clone())
    }

    /// Splits a regular square matrix into `r` disjoint permutation matrices.
    ///
    /// Each round extracts a perfect matching with augmenting paths, rows in
    /// ascending order and columns tried ascending, then removes it.
    pub fn decompose(&self) -> Result<Btu, FormatError> {
        let r = self.regular_degree().ok_or_else(|| FormatError::NotRegular {
            detail: format!(
                "{}x{} matrix does not have uniform row and column weight",
                self.rows, self.cols
            ),
        })?;
        let m = self.rows;
        let mut remaining = self.row_lists.clone();
        let mut perms = Vec::with_capacity(r);
        for round in 0..r {
            let image = perfect_matching(m, &remaining)
                .map_err(|row| FormatError::DecompositionFailed { round, row })?;
            for (i, &c) in image.iter().enumerate() {
                remaining[i].retain(|&x| x != c);
            }
            perms.push(Permutation::from_image(image).expect("matching is a bijection"));
        }
        // rounds remove their edges, so the matchings are disjoint
        Ok(Btu::from_permutations(perms).expect("matchings are pairwise disjoint"))
    }

    /// Dense rendering: one line of `0`/`1` per row.
    pub fn to_dense_string(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.cols + 1));
        for row in &self.row_lists {
            let mut line = vec![b'0'; self.cols];
            for &c in row {
                line[c] = b'1';
            }
            out.push_str(std::str::from_utf8(&line).unwrap());
            out.push('\n');
        }
        out
    }
}

// Kuhn's algorithm; Err(row) names the first row left unmatched.
fn perfect_matching(m: usize, adj: &[Vec<usize>]) -> Result<Vec<usize>, usize> {
    fn augment(
        i: usize,
        adj: &[Vec<usize>],
        col_owner: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &c in &adj[i] {
            if visited[c] {
                continue;
            }
            visited[c] = true;
            if col_owner[c].is_none_or(|o| augment(o, adj, col_owner, visited)) {
                col_owner[c] = Some(i);
                return true;
            }
        }
        false
    }

    let mut col_owner = vec![None; m];
    let mut visited = vec![false; m];
    for i in 0..m {
        visited.iter_mut().for_each(|v| *v = false);
        if !augment(i, adj, &mut col_owner, &mut visited) {
            return Err(i);
        }
    }
    let mut image = vec![0; m];
    for (c, owner) in col_owner.iter().enumerate() {
        image[owner.expect("all rows matched")] = c;
    }
    Ok(image)
}
