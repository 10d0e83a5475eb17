//! Order and girth bounds for regular bipartite graphs.
//!
//! Everything is exact integer arithmetic on `u64`; any intermediate power
//! that does not fit reports [`BoundsError::Overflow`] instead of wrapping.

use serde::Serialize;
use thiserror::Error;

use crate::perm::CycleType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("girth {0} must be even")]
    OddGirth(u64),
    #[error("girth {0} must be odd")]
    EvenGirth(u64),
    #[error("girth {g} below the minimum {min}")]
    GirthTooSmall { g: u64, min: u64 },
    #[error("degree {degree} below the minimum {min}")]
    DegreeTooSmall { degree: u64, min: u64 },
    #[error("closed form only available for degree 3, got {0}")]
    UnsupportedDegree(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("m must be at least 1")]
    ZeroOrder,
    #[error("arithmetic overflow evaluating {0}")]
    Overflow(&'static str),
}

type Result<T> = std::result::Result<T, BoundsError>;

fn pow(base: u64, exp: u64, what: &'static str) -> Result<u64> {
    let exp = u32::try_from(exp).map_err(|_| BoundsError::Overflow(what))?;
    base.checked_pow(exp).ok_or(BoundsError::Overflow(what))
}

fn require_even(g: u64) -> Result<()> {
    if g % 2 == 1 {
        Err(BoundsError::OddGirth(g))
    } else {
        Ok(())
    }
}

/// `m = b·k^(r−1)` with `b` as small as possible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorizationResult {
    pub m: u64,
    pub r: u64,
    pub b: u64,
    pub k: u64,
}

/// Scans `k` downward from `⌊m^(1/(r−1))⌋` and keeps the first `k^(r−1) | m`.
pub fn factorize_bk(m: u64, r: u64) -> Result<FactorizationResult> {
    if m == 0 {
        return Err(BoundsError::ZeroOrder);
    }
    if r < 2 {
        return Err(BoundsError::DegreeTooSmall { degree: r, min: 2 });
    }
    let e = r - 1;
    let mut k = integer_root(m, e);
    while k > 1 {
        let kp = pow(k, e, "k^(r-1)")?;
        if m % kp == 0 {
            return Ok(FactorizationResult { m, r, b: m / kp, k });
        }
        k -= 1;
    }
    Ok(FactorizationResult { m, r, b: m, k: 1 })
}

// largest x with x^e <= n
fn integer_root(n: u64, e: u64) -> u64 {
    if e == 1 {
        return n;
    }
    let fits = |x: u64| u32::try_from(e).ok().and_then(|e| x.checked_pow(e)).is_some_and(|v| v <= n);
    let mut x = (n as f64).powf(1.0 / e as f64).round() as u64 + 1;
    while x > 0 && !fits(x) {
        x -= 1;
    }
    while fits(x + 1) {
        x += 1;
    }
    x.max(1)
}

/// Claimed ceiling on the attainable girth: the largest even value below `2k`.
pub fn gmax_upper(m: u64, r: u64) -> Result<u64> {
    if r < 3 {
        return Err(BoundsError::DegreeTooSmall { degree: r, min: 3 });
    }
    let f = factorize_bk(m, r)?;
    Ok(2 * f.k - 2)
}

/// Partitions `β_1 … β_{r−1}` of `b·k^(r−1)`: `β_i` has `k^(r−1−i)` parts, each `b·k^i`.
pub fn optimal_partitions(b: u64, k: u64, r: u64) -> Result<Vec<CycleType>> {
    if b == 0 || k == 0 {
        return Err(BoundsError::ZeroOrder);
    }
    if r < 2 {
        return Err(BoundsError::DegreeTooSmall { degree: r, min: 2 });
    }
    // materialised as explicit multisets, so keep them modest
    const MAX_PARTS: u64 = 1 << 20;
    let total = b
        .checked_mul(pow(k, r - 1, "b*k^(r-1)")?)
        .ok_or(BoundsError::Overflow("b*k^(r-1)"))?;
    usize::try_from(total).map_err(|_| BoundsError::Overflow("b*k^(r-1)"))?;
    (1..r)
        .map(|i| {
            let count = pow(k, r - 1 - i, "k^(r-1-i)")?;
            if count > MAX_PARTS {
                return Err(BoundsError::Overflow("partition part count"));
            }
            let part = b * pow(k, i, "b*k^i")?;
            Ok(CycleType::from_parts(vec![part as usize; count as usize]))
        })
        .collect()
}

/// `Σ_{i<n} (d−1)^i`, i.e. `((d−1)^n − 1)/(d−2)` for `d >= 3`.
fn tree_sum(d: u64, n: u64, what: &'static str) -> Result<u64> {
    Ok((pow(d - 1, n, what)? - 1) / (d - 2))
}

/// Even-girth Moore bound on the total vertex count: `2((δ−1)^(g/2) − 1)/(δ−2)`.
pub fn moore_bipartite(g: u64, delta: u64) -> Result<u64> {
    require_even(g)?;
    if delta < 3 {
        return Err(BoundsError::DegreeTooSmall { degree: delta, min: 3 });
    }
    tree_sum(delta, g / 2, "moore_bipartite")?
        .checked_mul(2)
        .ok_or(BoundsError::Overflow("moore_bipartite"))
}

/// Lower bound on `m` (one side) for an `(m, r)` BTU of girth `g`:
/// `((r−1)^(g/2) − 1)/(r−2)`.
pub fn hoory_lower(g: u64, r: u64) -> Result<u64> {
    require_even(g)?;
    if r < 3 {
        return Err(BoundsError::DegreeTooSmall { degree: r, min: 3 });
    }
    tree_sum(r, g / 2, "hoory_lower")
}

/// `(lower, upper, improved_upper)` for `n(g, 3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ErdosSachs {
    pub lower: u64,
    pub upper: u64,
    pub improved_upper: u64,
}

/// Degree-3 closed forms: `2^(g/2) − 1 <= n(g,3) <= 2^g − 1`, improved to `2^(g−1)`.
pub fn erdos_sachs_bounds(g: u64, delta: u64) -> Result<ErdosSachs> {
    require_even(g)?;
    if g < 4 {
        return Err(BoundsError::GirthTooSmall { g, min: 4 });
    }
    if delta != 3 {
        return Err(BoundsError::UnsupportedDegree(delta));
    }
    Ok(ErdosSachs {
        lower: pow(2, g / 2, "erdos_sachs lower")? - 1,
        upper: pow(2, g, "erdos_sachs upper")? - 1,
        improved_upper: pow(2, g - 1, "erdos_sachs improved")?,
    })
}

/// Smallest `m = r^(g−5)` of the prime-power construction with girth `>= g`.
pub fn lazebnik_min_m(g: u64, r: u64) -> Result<u64> {
    if g < 8 {
        return Err(BoundsError::GirthTooSmall { g, min: 8 });
    }
    if !is_prime_power(r) {
        return Err(BoundsError::NotPrimePower(r));
    }
    pow(r, g - 5, "lazebnik_min_m")
}

/// Odd-girth Moore bound `1 + D·((D−1)^t − 1)/(D−2)` for `g = 2t + 1`.
pub fn moore_odd(g: u64, d: u64) -> Result<u64> {
    if g % 2 == 0 {
        return Err(BoundsError::EvenGirth(g));
    }
    if g < 5 {
        return Err(BoundsError::GirthTooSmall { g, min: 5 });
    }
    if d < 3 {
        return Err(BoundsError::DegreeTooSmall { degree: d, min: 3 });
    }
    tree_sum(d, (g - 1) / 2, "moore_odd")?
        .checked_mul(d)
        .and_then(|x| x.checked_add(1))
        .ok_or(BoundsError::Overflow("moore_odd"))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..).take_while(|d| d * d <= n).find(|d| n % d == 0).unwrap_or(n);
    let mut x = n;
    while x % p == 0 {
        x /= p;
    }
    x == 1
}

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre(a: i64, p: u64) -> Result<i8> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(BoundsError::NotOddPrime(p));
    }
    let a = a.rem_euclid(p as i64) as u64;
    Ok(match mod_pow(a, (p - 1) / 2, p) {
        0 => 0,
        1 => 1,
        _ => -1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LpsBound {
    pub g: u64,
    pub q: u64,
    pub n: u64,
}

/// Generator prime of the degree-3 LPS family.
pub const LPS_P: u64 = 2;

/// Smallest odd prime `q >= 2^((g+2)/4)` with `(2/q) = −1`, and the order `q(q²−1)`.
///
/// The real-valued threshold is compared exactly as `q⁴ >= 2^(g+2)`.
pub fn lps_min_q(g: u64) -> Result<LpsBound> {
    if g < 4 {
        return Err(BoundsError::GirthTooSmall { g, min: 4 });
    }
    if g + 2 >= 128 {
        return Err(BoundsError::Overflow("2^(g+2)"));
    }
    let threshold: u128 = 1u128 << (g + 2);
    let mut q = 3u64;
    loop {
        let q4 = (q as u128).pow(4);
        if q4 >= threshold && is_prime(q) && legendre(LPS_P as i64, q)? == -1 {
            let n = q
                .checked_mul(q)
                .and_then(|q2| q2.checked_sub(1))
                .and_then(|x| x.checked_mul(q))
                .ok_or(BoundsError::Overflow("q(q^2-1)"))?;
            return Ok(LpsBound { g, q, n });
        }
        q = q.checked_add(2).ok_or(BoundsError::Overflow("lps q"))?;
    }
}

/// Girth against smallest reported matrix size for the irregular
/// constructions compared against; stored, not computed.
pub fn reference_irregular_table() -> &'static [(u64, u64)] {
    &[(6, 5), (8, 9), (10, 39), (12, 97)]
}

pub fn reference_min_n(girth: u64) -> Option<u64> {
    reference_irregular_table().iter().find(|(g, _)| *g == girth).map(|&(_, n)| n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
    Claimed,
}

/// What a bound value counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// Vertices on one side (`m` of a BTU).
    PerSide,
    /// All vertices of the bipartite graph.
    TotalVertices,
    /// Order of a general (not necessarily bipartite) graph.
    GraphOrder,
    Girth,
    /// A construction parameter rather than a count.
    Parameter,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub name: &'static str,
    pub value: u64,
    pub direction: Direction,
    pub quantity: Quantity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundQuery {
    GirthDegree { g: u64, delta: u64 },
    OrderDegree { m: u64, r: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub query: BoundQuery,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn get(&self, name: &str) -> Option<u64> {
        self.entries.iter().find(|e| e.name == name).map(|e| e.value)
    }

    /// Every lower entry is at most every upper entry of the same quantity.
    pub fn is_consistent(&self) -> bool {
        self.entries.iter().filter(|l| l.direction == Direction::Lower).all(|l| {
            self.entries
                .iter()
                .filter(|u| u.direction == Direction::Upper && u.quantity == l.quantity)
                .all(|u| l.value <= u.value)
        })
    }
}

/// Every bound that applies to girth `g` and degree `delta`.
///
/// Bounds whose preconditions fail for this query are omitted; arithmetic
/// overflow is reported.
pub fn bound_report(g: u64, delta: u64) -> Result<BoundReport> {
    if delta < 3 {
        return Err(BoundsError::DegreeTooSmall { degree: delta, min: 3 });
    }
    let mut entries = Vec::new();
    let mut push = |name, value, direction, quantity| {
        entries.push(BoundEntry {
            name,
            value,
            direction,
            quantity,
        })
    };
    if g % 2 == 0 {
        if g < 4 {
            return Err(BoundsError::GirthTooSmall { g, min: 4 });
        }
        push("moore_bipartite", moore_bipartite(g, delta)?, Direction::Lower, Quantity::TotalVertices);
        push("hoory_lower", hoory_lower(g, delta)?, Direction::Lower, Quantity::PerSide);
        if delta == 3 {
            let es = erdos_sachs_bounds(g, delta)?;
            push("erdos_sachs_lower", es.lower, Direction::Lower, Quantity::GraphOrder);
            push("erdos_sachs_upper", es.upper, Direction::Upper, Quantity::GraphOrder);
            push("erdos_sachs_improved_upper", es.improved_upper, Direction::Upper, Quantity::GraphOrder);
            let lps = lps_min_q(g)?;
            push("lps_q", lps.q, Direction::Claimed, Quantity::Parameter);
            push("lps_order", lps.n, Direction::Upper, Quantity::TotalVertices);
        }
    } else {
        push("moore_odd", moore_odd(g, delta)?, Direction::Lower, Quantity::GraphOrder);
    }
    if g >= 8 && is_prime_power(delta) {
        push("lazebnik_min_m", lazebnik_min_m(g, delta)?, Direction::Upper, Quantity::PerSide);
    }
    Ok(BoundReport {
        query: BoundQuery::GirthDegree { g, delta },
        entries,
    })
}

/// Factorisation, claimed girth ceiling and partition shapes for an `(m, r)` BTU.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GmaxReport {
    pub factorization: FactorizationResult,
    pub gmax_upper: u64,
    pub partitions: Vec<CycleType>,
}

pub fn gmax_report(m: u64, r: u64) -> Result<GmaxReport> {
    let factorization = factorize_bk(m, r)?;
    Ok(GmaxReport {
        factorization,
        gmax_upper: gmax_upper(m, r)?,
        partitions: optimal_partitions(factorization.b, factorization.k, r)?,
    })
}
