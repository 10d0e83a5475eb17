//! Girth of bipartite graphs.
//!
//! [`girth_bfs`] is the production engine: a breadth-first search from every
//! left vertex (every cycle of a bipartite graph visits the left side), each
//! truncated once it can no longer beat the shortest cycle seen so far.
//! [`girth_oracle`] enumerates simple cycles exhaustively and exists to check
//! the engine on small graphs.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::btu::BipartiteGraph;

/// Largest graph the exhaustive oracle accepts.
pub const ORACLE_MAX_VERTICES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GirthError {
    #[error("oracle limited to {limit} vertices, graph has {vertices}")]
    TooLarge { vertices: usize, limit: usize },
}

/// Length of a shortest cycle, or `Infinite` for a forest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Girth {
    Finite(u32),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<u32> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Girth::Finite(_))
    }
}

impl Ord for Girth {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Girth::Finite(a), Girth::Finite(b)) => a.cmp(b),
            (Girth::Finite(_), Girth::Infinite) => Ordering::Less,
            (Girth::Infinite, Girth::Finite(_)) => Ordering::Greater,
            (Girth::Infinite, Girth::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Girth {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u32(*g),
            Girth::Infinite => s.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GirthResult {
    /// Exact girth, unless `at_or_below_cutoff` is set, in which case it is
    /// the length of a real cycle no longer than the cutoff.
    pub value: Girth,
    /// A cycle of length `value` as global vertex ids, alternating sides.
    pub witness: Option<Vec<usize>>,
    pub at_or_below_cutoff: bool,
}

/// Reusable BFS buffers; one per worker avoids reallocating per candidate.
#[derive(Debug, Default, Clone)]
pub struct GirthScratch {
    dist: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
}

const UNSEEN: u32 = u32::MAX;

impl GirthScratch {
    pub fn new() -> Self {
        Self::default()
    }

    fn reset(&mut self, n: usize) {
        self.dist.clear();
        self.dist.resize(n, UNSEEN);
        self.parent.clear();
        self.parent.resize(n, UNSEEN);
        self.queue.clear();
    }

    fn path_to_root(&self, mut v: u32) -> Vec<usize> {
        let mut path = vec![v as usize];
        while self.parent[v as usize] != UNSEEN {
            v = self.parent[v as usize];
            path.push(v as usize);
        }
        path
    }

    /// Cycle closed by the non-tree edge `u–w`, with the common tree prefix
    /// removed. Its length never exceeds `dist[u] + dist[w] + 1`.
    fn cycle_through(&self, u: u32, w: u32) -> Vec<usize> {
        let mut pu = self.path_to_root(u);
        let mut pw = self.path_to_root(w);
        pu.reverse();
        pw.reverse();
        let mut common = 0;
        while common < pu.len() && common < pw.len() && pu[common] == pw[common] {
            common += 1;
        }
        let lca = common - 1;
        let mut cycle: Vec<usize> = pu[lca..].to_vec();
        cycle.extend(pw[lca + 1..].iter().rev());
        cycle
    }
}

pub fn girth_bfs(g: &BipartiteGraph, cutoff: Option<u32>) -> GirthResult {
    girth_bfs_with(g, cutoff, &mut GirthScratch::new())
}

/// BFS girth with caller-owned buffers.
///
/// With `cutoff = Some(c)`, returns as soon as a cycle of length `<= c` is
/// known, flagged `at_or_below_cutoff`.
pub fn girth_bfs_with(g: &BipartiteGraph, cutoff: Option<u32>, scratch: &mut GirthScratch) -> GirthResult {
    let n = g.vertex_count();
    let mut best = u32::MAX;
    let mut witness: Option<Vec<usize>> = None;

    for root in 0..g.n_left() {
        scratch.reset(n);
        scratch.dist[root] = 0;
        scratch.queue.push(root as u32);
        let mut head = 0;
        'bfs: while head < scratch.queue.len() {
            let u = scratch.queue[head];
            head += 1;
            let du = scratch.dist[u as usize];
            // any cycle closed from here has length >= 2*du + 2
            if 2 * du + 2 >= best {
                break;
            }
            let pu = scratch.parent[u as usize];
            for &w in g.neighbors(u as usize) {
                if w == pu {
                    continue;
                }
                let dw = scratch.dist[w as usize];
                if dw == UNSEEN {
                    scratch.dist[w as usize] = du + 1;
                    scratch.parent[w as usize] = u;
                    scratch.queue.push(w);
                } else if du + dw + 1 < best {
                    let cycle = scratch.cycle_through(u, w);
                    let len = cycle.len() as u32;
                    if len < best {
                        best = len;
                        witness = Some(cycle);
                        if cutoff.is_some_and(|c| best <= c) {
                            return GirthResult {
                                value: Girth::Finite(best),
                                witness,
                                at_or_below_cutoff: true,
                            };
                        }
                        if 2 * du + 2 >= best {
                            break 'bfs;
                        }
                    }
                }
            }
        }
        // bipartite simple graphs cannot do better than 4
        if best == 4 {
            break;
        }
    }

    if best == u32::MAX {
        GirthResult {
            value: Girth::Infinite,
            witness: None,
            at_or_below_cutoff: false,
        }
    } else {
        GirthResult {
            value: Girth::Finite(best),
            witness,
            at_or_below_cutoff: false,
        }
    }
}

/// Exact girth by enumerating simple cycles from their smallest vertex.
///
/// The witness is canonical: it starts at its smallest vertex, its second
/// vertex is smaller than its last, and it is the lexicographically smallest
/// such sequence among all shortest cycles.
pub fn girth_oracle(g: &BipartiteGraph) -> Result<GirthResult, GirthError> {
    let n = g.vertex_count();
    if n > ORACLE_MAX_VERTICES {
        return Err(GirthError::TooLarge {
            vertices: n,
            limit: ORACLE_MAX_VERTICES,
        });
    }

    struct Dfs<'a> {
        g: &'a BipartiteGraph,
        start: usize,
        on_path: Vec<bool>,
        path: Vec<usize>,
        best: Option<Vec<usize>>,
    }

    impl Dfs<'_> {
        fn bound(&self) -> usize {
            self.best.as_ref().map_or(usize::MAX, Vec::len)
        }

        fn walk(&mut self, u: usize) {
            for &w in self.g.neighbors(u) {
                let w = w as usize;
                if w == self.start && self.path.len() >= 3 {
                    let p = &self.path;
                    if p[1] < p[p.len() - 1] {
                        let better = match &self.best {
                            None => true,
                            Some(b) => p.len() < b.len() || (p.len() == b.len() && p < b),
                        };
                        if better {
                            self.best = Some(p.clone());
                        }
                    }
                    continue;
                }
                if w <= self.start || self.on_path[w] || self.path.len() + 1 > self.bound() {
                    continue;
                }
                self.on_path[w] = true;
                self.path.push(w);
                self.walk(w);
                self.path.pop();
                self.on_path[w] = false;
            }
        }
    }

    let mut dfs = Dfs {
        g,
        start: 0,
        on_path: vec![false; n],
        path: Vec::new(),
        best: None,
    };
    for start in 0..n {
        dfs.start = start;
        dfs.path.clear();
        dfs.path.push(start);
        dfs.on_path[start] = true;
        dfs.walk(start);
        dfs.on_path[start] = false;
    }
    Ok(match dfs.best {
        Some(cycle) => GirthResult {
            value: Girth::Finite(cycle.len() as u32),
            witness: Some(cycle),
            at_or_below_cutoff: false,
        },
        None => GirthResult {
            value: Girth::Infinite,
            witness: None,
            at_or_below_cutoff: false,
        },
    })
}

/// True when `cycle` is a closed walk in `g` with distinct vertices.
pub fn is_cycle(g: &BipartiteGraph, cycle: &[usize]) -> bool {
    if cycle.len() < 3 {
        return false;
    }
    let mut seen = vec![false; g.vertex_count()];
    for &v in cycle {
        if v >= seen.len() || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    let adjacent = |a: usize, b: usize| g.neighbors(a).binary_search(&(b as u32)).is_ok();
    cycle.windows(2).all(|w| adjacent(w[0], w[1])) && adjacent(cycle[cycle.len() - 1], cycle[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::btu::Btu;
    use crate::perm::Permutation;

    fn shifts(n: usize, s: &[usize]) -> BipartiteGraph {
        Btu::from_permutations(s.iter().map(|&j| Permutation::circulant(n, j).unwrap()).collect())
            .unwrap()
            .to_bipartite()
    }

    fn both(g: &BipartiteGraph) -> (Girth, Girth) {
        let fast = girth_bfs(g, None);
        let slow = girth_oracle(g).unwrap();
        for r in [&fast, &slow] {
            if let Some(w) = &r.witness {
                assert!(is_cycle(g, w));
                assert_eq!(Girth::Finite(w.len() as u32), r.value);
            }
        }
        (fast.value, slow.value)
    }

    #[test]
    fn hexagon() {
        let g = shifts(3, &[0, 1]);
        assert_eq!(both(&g), (Girth::Finite(6), Girth::Finite(6)));
    }

    #[test]
    fn k33() {
        let g = shifts(3, &[0, 1, 2]);
        assert_eq!(both(&g), (Girth::Finite(4), Girth::Finite(4)));
        assert_eq!(girth_oracle(&g).unwrap().witness.unwrap(), vec![0, 3, 1, 4]);
    }

    #[test]
    fn heawood_and_pappus_like() {
        assert_eq!(both(&shifts(7, &[0, 1, 3])), (Girth::Finite(6), Girth::Finite(6)));
        assert_eq!(both(&shifts(9, &[0, 3, 4])), (Girth::Finite(6), Girth::Finite(6)));
    }

    #[test]
    fn forest_is_infinite() {
        let g = shifts(5, &[0]);
        assert_eq!(both(&g), (Girth::Infinite, Girth::Infinite));
        let empty = BipartiteGraph::from_left_lists(0, vec![]).unwrap();
        assert_eq!(girth_bfs(&empty, None).value, Girth::Infinite);
    }

    #[test]
    fn cutoff_returns_early_and_consistently() {
        let g = shifts(7, &[0, 1, 3]);
        let r = girth_bfs(&g, Some(6));
        assert!(r.at_or_below_cutoff);
        assert_eq!(r.value, Girth::Finite(6));
        let r = girth_bfs(&g, Some(4));
        assert!(!r.at_or_below_cutoff);
        assert_eq!(r.value, Girth::Finite(6));
    }

    #[test]
    fn oracle_guard() {
        let g = shifts(17, &[0, 1]);
        assert_eq!(
            girth_oracle(&g),
            Err(GirthError::TooLarge {
                vertices: 34,
                limit: ORACLE_MAX_VERTICES
            })
        );
    }

    #[test]
    fn girth_ordering() {
        assert!(Girth::Finite(10) < Girth::Infinite);
        assert!(Girth::Finite(6) < Girth::Finite(8));
    }
}
