use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("left vertex {left} lists right vertex {right}, but there are only {n_right}")]
    NeighborOutOfRange {
        left: usize,
        right: usize,
        n_right: usize,
    },
    #[error("parallel edge between left {left} and right {right}")]
    ParallelEdge { left: usize, right: usize },
}

/// Bipartite graph with `n_left` row vertices and `n_right` column vertices.
///
/// Vertices are numbered globally: left `i` is `i`, right `c` is `n_left + c`.
/// Adjacency is kept in compressed form over all vertices so the girth
/// engine can walk it without indirection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_left: usize,
    n_right: usize,
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl BipartiteGraph {
    /// Builds from per-left-vertex neighbor lists (right-side indices).
    pub fn from_left_lists(n_right: usize, lists: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let mut lists = lists;
        for (left, row) in lists.iter_mut().enumerate() {
            row.sort_unstable();
            for w in row.windows(2) {
                if w[0] == w[1] {
                    return Err(GraphError::ParallelEdge { left, right: w[0] });
                }
            }
            if let Some(&right) = row.last() {
                if right >= n_right {
                    return Err(GraphError::NeighborOutOfRange {
                        left,
                        right,
                        n_right,
                    });
                }
            }
        }
        Ok(Self::from_left_lists_unchecked(n_right, lists))
    }

    // lists must be sorted, duplicate-free and in range
    pub(crate) fn from_left_lists_unchecked(n_right: usize, lists: Vec<Vec<usize>>) -> Self {
        let n_left = lists.len();
        let n = n_left + n_right;
        let mut degree = vec![0usize; n];
        for (i, row) in lists.iter().enumerate() {
            degree[i] = row.len();
            for &c in row {
                degree[n_left + c] += 1;
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        for (i, row) in lists.iter().enumerate() {
            for &c in row {
                let rv = n_left + c;
                targets[fill[i]] = rv as u32;
                fill[i] += 1;
                targets[fill[rv]] = i as u32;
                fill[rv] += 1;
            }
        }
        BipartiteGraph {
            n_left,
            n_right,
            offsets,
            targets,
        }
    }

    #[inline]
    pub fn n_left(&self) -> usize {
        self.n_left
    }

    #[inline]
    pub fn n_right(&self) -> usize {
        self.n_right
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n_left + self.n_right
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Neighbors of a global vertex id, ascending.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Right-side indices adjacent to left vertex `i`.
    pub fn left_neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let base = self.n_left;
        self.neighbors(i).iter().map(move |&v| v as usize - base)
    }

    /// Iterates `(left, right)` pairs, left-major, both ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_left).flat_map(move |i| self.left_neighbors(i).map(move |c| (i, c)))
    }

    pub fn is_regular(&self, r: usize) -> bool {
        (0..self.vertex_count()).all(|v| self.degree(v) == r)
    }
}
