//! Enumeration search for a girth-maximum `(m, 3)` BTU with `m = b·k²`.
//!
//! Candidates are `(q1, j)` pairs: `q1` ranges over single `(b·k)`-cycles,
//! `j` over the admissible circulant shifts. Each candidate becomes the BTU
//! `[scale_up(q1, k), I_m, C_j]` and is scored by its girth. The winner is the
//! largest girth, ties broken by smallest `j` and then the lexicographically
//! smallest `q1`, so the result does not depend on how work is scheduled.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU32, AtomicU64, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::factorize_bk;
use crate::btu::{Btu, BtuError};
use crate::girth::{girth_bfs_with, Girth, GirthResult, GirthScratch};
use crate::perm::{enumerate_k_cycles, PermError, Permutation, ScalingStrategy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("no valid circulant shift for m = {m} with lower bound {lower}")]
    NoValidShift { m: usize, lower: usize },
    #[error("{m} has no square factor k^2 with k >= 2; supply b and k explicitly")]
    NoSquareFactor { m: usize },
    #[error("every candidate was incompatible; nothing to evaluate")]
    NoCompatibleCandidate,
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Btu(#[from] BtuError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub k: usize,
    pub b: usize,
    pub strategy: ScalingStrategy,
    /// Only enumerate cycles with `q1(0) = 1`.
    pub fix_first: bool,
    /// Require `b·k < j < m − b·k`.
    pub j_range_filter: bool,
    pub worker_count: usize,
    pub cutoff_pruning: bool,
}

impl SearchConfig {
    pub fn new(k: usize) -> Self {
        SearchConfig {
            k,
            b: 1,
            strategy: ScalingStrategy::Interleaved,
            fix_first: false,
            j_range_filter: true,
            worker_count: 1,
            cutoff_pruning: true,
        }
    }

    pub fn with_b(mut self, b: usize) -> Self {
        self.b = b;
        self
    }

    pub fn with_strategy(mut self, strategy: ScalingStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn with_fix_first(mut self, fix_first: bool) -> Self {
        self.fix_first = fix_first;
        self
    }

    pub fn with_j_range_filter(mut self, on: bool) -> Self {
        self.j_range_filter = on;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.worker_count = workers;
        self
    }

    pub fn with_cutoff_pruning(mut self, on: bool) -> Self {
        self.cutoff_pruning = on;
        self
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.b * self.k * self.k
    }

    /// Size of the base permutation `q1`.
    #[inline]
    pub fn base_size(&self) -> usize {
        self.b * self.k
    }

    fn shift_lower(&self) -> usize {
        if self.j_range_filter {
            self.base_size()
        } else {
            0
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        if self.k < 2 {
            return Err(SearchError::InvalidConfig(format!("k must be >= 2, got {}", self.k)));
        }
        if self.b < 1 {
            return Err(SearchError::InvalidConfig("b must be >= 1".into()));
        }
        if self.worker_count < 1 {
            return Err(SearchError::InvalidConfig("worker_count must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub k: usize,
    pub b: usize,
    pub m: usize,
    pub strategy: ScalingStrategy,
    pub best_girth: u32,
    #[serde(serialize_with = "one_based")]
    pub witness_q1: Permutation,
    pub witness_j: usize,
    pub candidates_evaluated: u64,
    pub skipped_incompatible: u64,
    #[serde(rename = "elapsed_ms", serialize_with = "millis")]
    pub elapsed: Duration,
}

fn one_based<S: serde::Serializer>(p: &Permutation, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_one_based_string())
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

impl SearchResult {
    /// Rebuilds the winning BTU.
    pub fn witness_btu(&self) -> Result<Btu, SearchError> {
        let cfg = SearchConfig::new(self.k)
            .with_b(self.b)
            .with_strategy(self.strategy);
        construct_candidate(&self.witness_q1, self.witness_j, &cfg)
    }

    /// `key: value` lines in a fixed order.
    pub fn to_text(&self) -> String {
        format!(
            "k: {}\nb: {}\nm: {}\nstrategy: {}\nbest_girth: {}\nwitness_q1: {}\nwitness_j: {}\n\
             candidates_evaluated: {}\nskipped_incompatible: {}\nelapsed_ms: {}\n",
            self.k,
            self.b,
            self.m,
            self.strategy,
            self.best_girth,
            self.witness_q1,
            self.witness_j,
            self.candidates_evaluated,
            self.skipped_incompatible,
            self.elapsed.as_millis()
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("search result serializes")
    }
}

/// Shifts `j` with `gcd(j, m) = 1` and `lower < j < m − lower`, ascending.
///
/// `gcd(j, m) = 1` already implies `gcd(j, m − j) = 1`, so the three-way
/// coprimality condition collapses to this single test.
pub fn valid_shifts(m: usize, lower: usize) -> Vec<usize> {
    if m <= 2 * lower {
        return Vec::new();
    }
    (lower + 1..m - lower).filter(|&j| gcd(j, m) == 1).collect()
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(b, k)` with `m = b·k²`, `k >= 2` and `b` minimal.
pub fn factor_for_search(m: usize) -> Result<(usize, usize), SearchError> {
    if m == 0 {
        return Err(SearchError::NoSquareFactor { m });
    }
    let f = factorize_bk(m as u64, 3).map_err(|_| SearchError::NoSquareFactor { m })?;
    if f.k < 2 {
        return Err(SearchError::NoSquareFactor { m });
    }
    Ok((f.b as usize, f.k as usize))
}

/// `[scale_up(q1, k), I_m, C_j]`, validated.
pub fn construct_candidate(q1: &Permutation, j: usize, cfg: &SearchConfig) -> Result<Btu, SearchError> {
    if q1.size() != cfg.base_size() {
        return Err(SearchError::InvalidConfig(format!(
            "q1 has size {}, expected b·k = {}",
            q1.size(),
            cfg.base_size()
        )));
    }
    let m = cfg.m();
    let p1 = q1.scale_up(cfg.k, cfg.strategy)?;
    let p2 = Permutation::identity(m)?;
    let p3 = Permutation::circulant(m, j)?;
    Ok(Btu::from_permutations(vec![p1, p2, p3])?)
}

/// What happened to one candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateOutcome {
    Incompatible,
    /// Girth of the candidate; when `at_or_below_cutoff` is set the value
    /// is an upper bound that already lost to the incumbent.
    Evaluated(GirthResult),
}

/// Hook invoked for every candidate, from worker threads.
pub trait SearchObserver: Sync {
    fn on_candidate(&self, q1: &Permutation, j: usize, outcome: &CandidateOutcome);
}

struct Silent;

impl SearchObserver for Silent {
    fn on_candidate(&self, _: &Permutation, _: usize, _: &CandidateOutcome) {}
}

/// Running counters that another thread may poll while a search runs.
#[derive(Debug, Default)]
pub struct SearchProgress {
    pub evaluated: AtomicU64,
    pub skipped: AtomicU64,
    pub best_girth: AtomicU32,
}

impl SearchObserver for SearchProgress {
    fn on_candidate(&self, _: &Permutation, _: usize, outcome: &CandidateOutcome) {
        match outcome {
            CandidateOutcome::Incompatible => {
                self.skipped.fetch_add(1, AtomicOrdering::Relaxed);
            }
            CandidateOutcome::Evaluated(r) => {
                self.evaluated.fetch_add(1, AtomicOrdering::Relaxed);
                if let (false, Girth::Finite(g)) = (r.at_or_below_cutoff, r.value) {
                    self.best_girth.fetch_max(g, AtomicOrdering::Relaxed);
                }
            }
        }
    }
}

pub fn search_r3(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    search_r3_observed(cfg, &Silent)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Best {
    girth: u32,
    j: usize,
    q1: Permutation,
}

impl Best {
    // Greater is better: larger girth, then smaller j, then smaller q1.
    fn rank(&self, other: &Best) -> Ordering {
        self.girth
            .cmp(&other.girth)
            .then_with(|| other.j.cmp(&self.j))
            .then_with(|| other.q1.cmp(&self.q1))
    }
}

#[derive(Debug, Default, Clone)]
struct Tally {
    best: Option<Best>,
    evaluated: u64,
    skipped: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.evaluated += other.evaluated;
        self.skipped += other.skipped;
        self.best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(if b.rank(&a) == Ordering::Greater { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// [`search_r3`] with a per-candidate hook.
pub fn search_r3_observed(cfg: &SearchConfig, observer: &dyn SearchObserver) -> Result<SearchResult, SearchError> {
    cfg.validate()?;
    let started = Instant::now();
    let m = cfg.m();
    let lower = cfg.shift_lower();
    let shifts = valid_shifts(m, lower);
    if shifts.is_empty() {
        return Err(SearchError::NoValidShift { m, lower });
    }
    let bases: Vec<Permutation> = enumerate_k_cycles(cfg.base_size(), cfg.fix_first)?.collect();

    // Advisory only: a stale value just means less pruning.
    let incumbent = AtomicU32::new(0);
    let identity = Permutation::identity(m)?;
    let circulants: Vec<Permutation> = shifts
        .iter()
        .map(|&j| Permutation::circulant(m, j))
        .collect::<Result<_, _>>()?;

    let evaluate = |scratch: &mut GirthScratch, q1: &Permutation| -> Result<Tally, SearchError> {
        let mut tally = Tally::default();
        let p1 = q1.scale_up(cfg.k, cfg.strategy)?;
        for (&j, cj) in shifts.iter().zip(&circulants) {
            let btu = match Btu::from_permutations(vec![p1.clone(), identity.clone(), cj.clone()]) {
                Ok(b) => b,
                Err(BtuError::IncompatiblePermutations { .. }) => {
                    tally.skipped += 1;
                    observer.on_candidate(q1, j, &CandidateOutcome::Incompatible);
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            let cutoff = match incumbent.load(AtomicOrdering::Relaxed) {
                g if cfg.cutoff_pruning && g > 2 => Some(g - 2),
                _ => None,
            };
            let result = girth_bfs_with(&btu.to_bipartite(), cutoff, scratch);
            tally.evaluated += 1;
            if let (false, Girth::Finite(g)) = (result.at_or_below_cutoff, result.value) {
                incumbent.fetch_max(g, AtomicOrdering::Relaxed);
                let cand = Best {
                    girth: g,
                    j,
                    q1: q1.clone(),
                };
                if tally.best.as_ref().is_none_or(|b| cand.rank(b) == Ordering::Greater) {
                    tally.best = Some(cand);
                }
            }
            observer.on_candidate(q1, j, &CandidateOutcome::Evaluated(result));
        }
        Ok(tally)
    };

    let tally = if cfg.worker_count == 1 {
        let mut scratch = GirthScratch::new();
        let mut total = Tally::default();
        for q1 in &bases {
            total = total.merge(evaluate(&mut scratch, q1)?);
        }
        total
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.worker_count)
            .build()
            .map_err(|e| SearchError::ThreadPool(e.to_string()))?;
        pool.install(|| {
            bases
                .par_iter()
                .map_init(GirthScratch::new, |scratch, q1| evaluate(scratch, q1))
                .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
        })?
    };

    let best = tally.best.ok_or(SearchError::NoCompatibleCandidate)?;
    Ok(SearchResult {
        k: cfg.k,
        b: cfg.b,
        m,
        strategy: cfg.strategy,
        best_girth: best.girth,
        witness_q1: best.q1,
        witness_j: best.j,
        candidates_evaluated: tally.evaluated,
        skipped_incompatible: tally.skipped,
        elapsed: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::girth::girth_oracle;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_image(v.to_vec()).unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(
            valid_shifts(25, 5),
            vec![6, 7, 8, 9, 11, 12, 13, 14, 16, 17, 18, 19]
        );
        assert_eq!(valid_shifts(9, 3), vec![4, 5]);
        assert!(valid_shifts(6, 1).is_empty());
        assert_eq!(valid_shifts(6, 0), vec![1, 5]);
        assert!(valid_shifts(6, 3).is_empty());
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor_for_search(100).unwrap(), (1, 10));
        assert_eq!(factor_for_search(12).unwrap(), (3, 2));
        assert_eq!(factor_for_search(72).unwrap(), (2, 6));
        assert_eq!(factor_for_search(30), Err(SearchError::NoSquareFactor { m: 30 }));
    }

    #[test]
    fn candidate_k3() {
        let cfg = SearchConfig::new(3).with_strategy(ScalingStrategy::Block);
        let b = construct_candidate(&p(&[1, 2, 0]), 4, &cfg).unwrap();
        assert_eq!(b.perms()[0].image(), &[3, 4, 5, 6, 7, 8, 0, 1, 2]);
        assert!(b.perms()[1].is_identity());
        assert_eq!(b.perms()[2], Permutation::circulant(9, 4).unwrap());
    }

    #[test]
    fn candidate_with_fixed_point_collides() {
        let cfg = SearchConfig::new(3);
        for j in valid_shifts(9, 3) {
            assert!(matches!(
                construct_candidate(&p(&[0, 2, 1]), j, &cfg),
                Err(SearchError::Btu(BtuError::IncompatiblePermutations { a: 0, b: 1, .. }))
            ));
        }
    }

    #[test]
    fn candidate_k2_by_hand() {
        // block: q1 = [1,0] scales to [2,3,0,1]; C_1 = [1,2,3,0]; I = [0,1,2,3]
        // positions are pairwise distinct, so the triple is compatible
        let cfg = SearchConfig::new(2)
            .with_strategy(ScalingStrategy::Block)
            .with_j_range_filter(false);
        let b = construct_candidate(&p(&[1, 0]), 1, &cfg).unwrap();
        assert_eq!(b.perms()[0].image(), &[2, 3, 0, 1]);
        // interleaved: [1,0,3,2] against C_1 = [1,2,3,0] collides at 0
        let cfg = cfg.with_strategy(ScalingStrategy::Interleaved);
        assert!(construct_candidate(&p(&[1, 0]), 1, &cfg).is_err());
    }

    #[test]
    fn k3_exhaustive_with_oracle() {
        // 1 base cycle × 2 shifts, each scored by the oracle
        let cfg = SearchConfig::new(3)
            .with_strategy(ScalingStrategy::Block)
            .with_fix_first(true);
        let mut expected: Option<(u32, usize)> = None;
        for j in valid_shifts(9, 3) {
            let b = construct_candidate(&p(&[1, 2, 0]), j, &cfg).unwrap();
            let g = girth_oracle(&b.to_bipartite()).unwrap().value.finite().unwrap();
            if expected.is_none_or(|(bg, _)| g > bg) {
                expected = Some((g, j));
            }
        }
        assert_eq!(expected, Some((6, 4)));
        let res = search_r3(&cfg).unwrap();
        assert_eq!((res.best_girth, res.witness_j), (6, 4));
        assert_eq!(res.witness_q1, p(&[1, 2, 0]));
        assert_eq!(res.candidates_evaluated + res.skipped_incompatible, 2);
    }

    #[test]
    fn rejects_bad_config() {
        assert!(matches!(search_r3(&SearchConfig::new(1)), Err(SearchError::InvalidConfig(_))));
        assert!(matches!(
            search_r3(&SearchConfig::new(3).with_workers(0)),
            Err(SearchError::InvalidConfig(_))
        ));
        // m = 4, lower = 2: no room for a shift
        assert_eq!(
            search_r3(&SearchConfig::new(2)),
            Err(SearchError::NoValidShift { m: 4, lower: 2 })
        );
    }

    #[test]
    fn defaults() {
        let cfg = SearchConfig::new(7);
        assert_eq!((cfg.b, cfg.m(), cfg.base_size()), (1, 49, 7));
        assert_eq!(cfg.strategy, ScalingStrategy::Interleaved);
        assert!(!cfg.fix_first && cfg.j_range_filter && cfg.cutoff_pruning);
    }

    #[test]
    fn report_formats() {
        let res = search_r3(&SearchConfig::new(3).with_strategy(ScalingStrategy::Block)).unwrap();
        let text = res.to_text();
        assert!(text.contains("best_girth: 6\n"));
        assert!(text.contains("witness_q1: 2 3 1\n"));
        let json: serde_json::Value = serde_json::from_str(&res.to_json()).unwrap();
        assert_eq!(json["witness_q1"], "2 3 1");
        assert_eq!(json["strategy"], "block");
        assert_eq!(json["m"], 9);
        assert!(json["elapsed_ms"].is_u64());
    }
}
