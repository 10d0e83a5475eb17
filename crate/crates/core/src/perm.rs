//! Permutation algebra on `{0, .., n-1}` in one-line notation.
//!
//! Everything a BTU is built from lives here: identities, circulant shifts,
//! composition, cycle structure, block scaling and the enumeration of single
//! `k`-cycles used by the search.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by permutation constructors and binary operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutation size must be at least 1")]
    Empty,
    #[error("not a bijection: value {value} at position {position} (size {size})")]
    NotBijection {
        position: usize,
        value: usize,
        size: usize,
    },
    #[error("shift {shift} out of range for size {size}")]
    ShiftOutOfRange { shift: usize, size: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("scale factor must be at least 1")]
    ZeroScale,
    #[error("k-cycle enumeration needs k >= 2, got {0}")]
    CycleTooShort(usize),
}

/// A bijection on `{0, .., n-1}`; `image()[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Validates a one-line image vector.
    pub fn from_image(image: Vec<usize>) -> Result<Self, PermError> {
        let n = image.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = vec![false; n];
        for (position, &value) in image.iter().enumerate() {
            if value >= n || seen[value] {
                return Err(PermError::NotBijection {
                    position,
                    value,
                    size: n,
                });
            }
            seen[value] = true;
        }
        Ok(Self { image })
    }

    /// Parses 1-based one-line notation such as `"2 3 1"`.
    pub fn parse_one_based(text: &str) -> Result<Self, PermError> {
        let mut image = Vec::new();
        for (position, tok) in text.split_whitespace().enumerate() {
            let value: usize = tok.parse().map_err(|_| PermError::NotBijection {
                position,
                value: 0,
                size: 0,
            })?;
            if value == 0 {
                return Err(PermError::NotBijection {
                    position,
                    value,
                    size: 0,
                });
            }
            image.push(value - 1);
        }
        Self::from_image(image)
    }

    pub fn identity(n: usize) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::Empty);
        }
        Ok(Self {
            image: (0..n).collect(),
        })
    }

    /// The shift `i -> (i + j) mod n`.
    pub fn circulant(n: usize, j: usize) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::Empty);
        }
        if j >= n {
            return Err(PermError::ShiftOutOfRange { shift: j, size: n });
        }
        Ok(Self {
            image: (0..n).map(|i| (i + j) % n).collect(),
        })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.image.len()
    }

    #[inline]
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i != v)
    }

    /// `self ∘ other`: applies `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.size() != other.size() {
            return Err(PermError::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(Permutation {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.size()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v] = i;
        }
        Permutation { image }
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x];
                len += 1;
            }
            parts.push(len);
        }
        CycleType::from_parts(parts)
    }

    /// Cycle type of `self ∘ other⁻¹`, the partition between two permutations.
    pub fn relative_cycle_type(&self, other: &Permutation) -> Result<CycleType, PermError> {
        Ok(self.compose(&other.inverse())?.cycle_type())
    }

    /// Lifts a permutation on `n` points to `n * k` points.
    pub fn scale_up(&self, k: usize, strategy: ScalingStrategy) -> Result<Permutation, PermError> {
        if k == 0 {
            return Err(PermError::ZeroScale);
        }
        let n = self.size();
        let mut image = vec![0; n * k];
        match strategy {
            ScalingStrategy::Block => {
                for (i, &q) in self.image.iter().enumerate() {
                    for t in 0..k {
                        image[i * k + t] = q * k + t;
                    }
                }
            }
            ScalingStrategy::Interleaved => {
                for t in 0..k {
                    for (i, &q) in self.image.iter().enumerate() {
                        image[i + t * n] = q + t * n;
                    }
                }
            }
        }
        Ok(Permutation { image })
    }

    /// Space-separated 1-based one-line notation.
    pub fn to_one_based_string(&self) -> String {
        let mut out = String::with_capacity(self.size() * 3);
        for (idx, v) in self.image.iter().enumerate() {
            if idx > 0 {
                out.push(' ');
            }
            out.push_str(&(v + 1).to_string());
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_one_based_string())
    }
}

/// How a permutation on `n` points is replicated onto `n * k` points.
///
/// `Block` maps `i*k + t` to `q(i)*k + t` (the Kronecker product `q ⊗ I_k`);
/// `Interleaved` maps `i + t*n` to `q(i) + t*n` (`I_k ⊗ q`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalingStrategy {
    Block,
    #[default]
    Interleaved,
}

impl ScalingStrategy {
    pub const ALL: [ScalingStrategy; 2] = [ScalingStrategy::Block, ScalingStrategy::Interleaved];

    pub fn name(self) -> &'static str {
        match self {
            ScalingStrategy::Block => "block",
            ScalingStrategy::Interleaved => "interleaved",
        }
    }
}

impl fmt::Display for ScalingStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ScalingStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "block" => Ok(ScalingStrategy::Block),
            "interleaved" => Ok(ScalingStrategy::Interleaved),
            other => Err(format!("unknown scaling strategy `{other}` (expected block or interleaved)")),
        }
    }
}

/// An integer partition, parts sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn min_part(&self) -> Option<usize> {
        self.parts.last().copied()
    }

    pub fn max_part(&self) -> Option<usize> {
        self.parts.first().copied()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Lexicographic stream of the single `k`-cycles of `S_k`.
///
/// With `fix_first`, only cycles with `image[0] == 1` are produced, which
/// leaves `(k-2)!` of the `(k-1)!` cycles.
pub fn enumerate_k_cycles(k: usize, fix_first: bool) -> Result<KCycles, PermError> {
    if k < 2 {
        return Err(PermError::CycleTooShort(k));
    }
    Ok(KCycles {
        k,
        fix_first,
        image: vec![0; k],
        used: vec![false; k],
        next: vec![0; k],
        pos: 0,
        done: false,
    })
}

/// Iterator returned by [`enumerate_k_cycles`].
///
/// Backtracks over positions in order, trying values ascending, and rejects
/// any assignment that closes a cycle shorter than `k`.
#[derive(Debug, Clone)]
pub struct KCycles {
    k: usize,
    fix_first: bool,
    image: Vec<usize>,
    used: Vec<bool>,
    next: Vec<usize>,
    pos: usize,
    done: bool,
}

impl KCycles {
    // positions 0..i are assigned and form a union of open chains
    fn admissible(&self, i: usize, v: usize) -> bool {
        if self.used[v] || (self.fix_first && i == 0 && v != 1) {
            return false;
        }
        let mut len = 1;
        let mut x = v;
        loop {
            if x == i {
                return len == self.k;
            }
            if x > i {
                return true;
            }
            x = self.image[x];
            len += 1;
        }
    }
}

impl Iterator for KCycles {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        while !self.done {
            let i = self.pos;
            let mut v = self.next[i];
            while v < self.k && !self.admissible(i, v) {
                v += 1;
            }
            if v < self.k {
                self.image[i] = v;
                self.used[v] = true;
                self.next[i] = v + 1;
                if i + 1 == self.k {
                    self.used[v] = false;
                    return Some(Permutation {
                        image: self.image.clone(),
                    });
                }
                self.pos = i + 1;
                self.next[self.pos] = 0;
            } else if i == 0 {
                self.done = true;
            } else {
                self.pos = i - 1;
                self.used[self.image[self.pos]] = false;
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_image(v.to_vec()).unwrap()
    }

    fn ct(v: &[usize]) -> CycleType {
        CycleType::from_parts(v.to_vec())
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    // every permutation of 0..k in lexicographic order, by brute force
    fn all_perms(k: usize) -> Vec<Vec<usize>> {
        fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            let k = used.len();
            if prefix.len() == k {
                out.push(prefix.clone());
                return;
            }
            for v in 0..k {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; k], &mut out);
        out
    }

    fn is_single_cycle(v: &[usize]) -> bool {
        let mut x = 0;
        let mut len = 0;
        loop {
            x = v[x];
            len += 1;
            if x == 0 {
                return len == v.len();
            }
            if len > v.len() {
                return false;
            }
        }
    }

    #[test]
    fn identity_and_circulant() {
        assert_eq!(Permutation::identity(3).unwrap().image(), &[0, 1, 2]);
        assert_eq!(Permutation::identity(1).unwrap().image(), &[0]);
        assert_eq!(Permutation::identity(0), Err(PermError::Empty));
        assert_eq!(Permutation::identity(5).unwrap().cycle_type(), ct(&[1; 5]));
        assert_eq!(Permutation::circulant(5, 2).unwrap().image(), &[2, 3, 4, 0, 1]);
        assert_eq!(
            Permutation::circulant(5, 0).unwrap(),
            Permutation::identity(5).unwrap()
        );
        assert_eq!(Permutation::circulant(6, 2).unwrap().cycle_type(), ct(&[3, 3]));
        assert!(matches!(
            Permutation::circulant(5, 5),
            Err(PermError::ShiftOutOfRange { .. })
        ));
    }

    #[test]
    fn from_image_rejects_non_bijection() {
        assert!(Permutation::from_image(vec![0, 0]).is_err());
        assert!(Permutation::from_image(vec![0, 2]).is_err());
        assert_eq!(Permutation::from_image(vec![]), Err(PermError::Empty));
    }

    #[test]
    fn compose_and_inverse() {
        let c2 = Permutation::circulant(5, 2).unwrap();
        let c3 = Permutation::circulant(5, 3).unwrap();
        assert!(c2.compose(&c3).unwrap().is_identity());
        let q = p(&[2, 0, 3, 1]);
        assert_eq!(q.compose(&Permutation::identity(4).unwrap()).unwrap(), q);
        assert!(q.compose(&q.inverse()).unwrap().is_identity());
        assert_eq!(p(&[1, 2, 0]).inverse(), p(&[2, 0, 1]));
        assert!(Permutation::identity(4).unwrap().inverse().is_identity());
        assert_eq!(
            Permutation::circulant(7, 3).unwrap().inverse(),
            Permutation::circulant(7, 4).unwrap()
        );
        assert_eq!(
            c2.compose(&Permutation::identity(4).unwrap()),
            Err(PermError::SizeMismatch { left: 5, right: 4 })
        );
    }

    #[test]
    fn compose_applies_right_first() {
        let a = p(&[1, 0, 2]);
        let b = p(&[0, 2, 1]);
        // a(b(0)) = a(0) = 1, a(b(1)) = a(2) = 2, a(b(2)) = a(1) = 0
        assert_eq!(a.compose(&b).unwrap(), p(&[1, 2, 0]));
    }

    #[test]
    fn cycle_types() {
        assert_eq!(p(&[1, 2, 0]).cycle_type(), ct(&[3]));
        assert_eq!(Permutation::identity(4).unwrap().cycle_type(), ct(&[1, 1, 1, 1]));
        // traced by hand: 0->8->4->0, 1->9->5->1, 2->10->6->2, 3->11->7->3
        assert_eq!(
            Permutation::circulant(12, 8).unwrap().cycle_type(),
            ct(&[3, 3, 3, 3])
        );
    }

    #[test]
    fn relative_cycle_types() {
        let n = 6;
        let c1 = Permutation::circulant(n, 1).unwrap();
        let id = Permutation::identity(n).unwrap();
        assert_eq!(c1.relative_cycle_type(&id).unwrap(), ct(&[6]));
        assert_eq!(c1.relative_cycle_type(&c1).unwrap(), ct(&[1; 6]));
        let c2 = Permutation::circulant(9, 2).unwrap();
        let c5 = Permutation::circulant(9, 5).unwrap();
        assert_eq!(c2.relative_cycle_type(&c5).unwrap(), ct(&[3, 3, 3]));
    }

    #[test]
    fn scaling() {
        let q = p(&[1, 0]);
        assert_eq!(q.scale_up(2, ScalingStrategy::Block).unwrap().image(), &[2, 3, 0, 1]);
        let q = p(&[1, 2, 0]);
        let s = q.scale_up(3, ScalingStrategy::Block).unwrap();
        assert_eq!(s.image(), &[3, 4, 5, 6, 7, 8, 0, 1, 2]);
        assert_eq!(s, Permutation::circulant(9, 3).unwrap());
        assert_eq!(
            q.scale_up(3, ScalingStrategy::Interleaved).unwrap().image(),
            &[1, 2, 0, 4, 5, 3, 7, 8, 6]
        );
        let q = p(&[3, 0, 2, 1]);
        for s in ScalingStrategy::ALL {
            assert_eq!(q.scale_up(1, s).unwrap(), q);
        }
        assert_eq!(q.scale_up(0, ScalingStrategy::Block), Err(PermError::ZeroScale));
    }

    #[test]
    fn scaled_cycle_type_replicates_parts() {
        // brute force over S_n for n*k <= 24
        for n in 1..=4 {
            for k in 1..=(24 / n).min(6) {
                for img in all_perms(n) {
                    let q = p(&img);
                    let expected: Vec<usize> = q
                        .cycle_type()
                        .parts()
                        .iter()
                        .flat_map(|&c| std::iter::repeat_n(c, k))
                        .collect();
                    for s in ScalingStrategy::ALL {
                        let scaled = q.scale_up(k, s).unwrap();
                        assert_eq!(scaled.cycle_type(), CycleType::from_parts(expected.clone()));
                        assert_eq!(scaled.is_fixed_point_free(), q.is_fixed_point_free());
                    }
                }
            }
        }
    }

    #[test]
    fn k_cycle_examples() {
        let c: Vec<_> = enumerate_k_cycles(3, true).unwrap().collect();
        assert_eq!(c, vec![p(&[1, 2, 0])]);
        assert_eq!(enumerate_k_cycles(4, true).unwrap().count(), 2);
        assert_eq!(enumerate_k_cycles(4, false).unwrap().count(), 6);
        let c: Vec<_> = enumerate_k_cycles(2, true).unwrap().collect();
        assert_eq!(c, vec![p(&[1, 0])]);
        assert!(matches!(enumerate_k_cycles(1, true), Err(PermError::CycleTooShort(1))));
    }

    #[test]
    fn k_cycles_match_brute_force() {
        for k in 2..=7 {
            for fix_first in [true, false] {
                let expected: Vec<Permutation> = all_perms(k)
                    .into_iter()
                    .filter(|v| is_single_cycle(v) && (!fix_first || v[0] == 1))
                    .map(|v| p(&v))
                    .collect();
                let got: Vec<Permutation> = enumerate_k_cycles(k, fix_first).unwrap().collect();
                assert_eq!(got, expected, "k={k} fix_first={fix_first}");
                let count = if fix_first { factorial(k - 2) } else { factorial(k - 1) };
                assert_eq!(got.len(), count);
                assert!(got.iter().all(|q| q.cycle_type() == ct(&[k])));
            }
        }
    }

    #[test]
    fn one_based_rendering() {
        let q = p(&[1, 2, 0]);
        assert_eq!(q.to_string(), "2 3 1");
        assert_eq!(Permutation::parse_one_based("2 3 1").unwrap(), q);
        assert!(Permutation::parse_one_based("0 1").is_err());
    }
}
