//! Triangle types and dense triangle sets.
//!
//! Sorted triples `i ≤ j ≤ k` over `{1..δ}` are ranked by `k`, then `j`,
//! then `i`. Because the ranking is ordered by the largest entry first, the
//! triples for diameter `δ` are exactly the first `C(δ+2, 3)` ranks, so one
//! global table serves every diameter.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parameter_space::{ParameterTuple, K1};
use crate::permutations::Twist;

/// Largest diameter a [`TriangleSet`] can hold.
pub const MAX_DELTA: u32 = 64;

/// A sorted distance triple `1 ≤ i ≤ j ≤ k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[u32; 3]", try_from = "[u32; 3]")]
pub struct Triple {
    i: u32,
    j: u32,
    k: u32,
}

impl Triple {
    /// Requires `1 ≤ i ≤ j ≤ k`.
    pub fn new(i: u32, j: u32, k: u32) -> Result<Self> {
        if i == 0 || i > j || j > k {
            return Err(Error::InvalidArgument(format!(
                "({i},{j},{k}) is not a sorted triple of positive distances"
            )));
        }
        Ok(Self { i, j, k })
    }

    /// Sorts three positive distances.
    #[inline]
    pub fn sorted(a: u32, b: u32, c: u32) -> Self {
        debug_assert!(a > 0 && b > 0 && c > 0);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if c >= hi {
            Self { i: lo, j: hi, k: c }
        } else if c >= lo {
            Self { i: lo, j: c, k: hi }
        } else {
            Self { i: c, j: lo, k: hi }
        }
    }

    #[inline]
    pub fn i(self) -> u32 {
        self.i
    }
    #[inline]
    pub fn j(self) -> u32 {
        self.j
    }
    #[inline]
    pub fn k(self) -> u32 {
        self.k
    }

    #[inline]
    pub fn perimeter(self) -> u32 {
        self.i + self.j + self.k
    }

    #[inline]
    pub fn min(self) -> u32 {
        self.i
    }

    /// Triangle inequality; a triple failing it is not a triangle type.
    #[inline]
    pub fn is_triangle(self) -> bool {
        self.i + self.j >= self.k
    }

    /// Position in the global ranking.
    #[inline]
    pub fn rank(self) -> usize {
        let (a, b, c) = (
            (self.i - 1) as usize,
            (self.j - 1) as usize,
            (self.k - 1) as usize,
        );
        (c * (c + 1) * (c + 2)) / 6 + (b * (b + 1)) / 2 + a
    }
}

impl From<Triple> for [u32; 3] {
    fn from(t: Triple) -> Self {
        [t.i, t.j, t.k]
    }
}

impl TryFrom<[u32; 3]> for Triple {
    type Error = Error;
    fn try_from(v: [u32; 3]) -> Result<Self> {
        Triple::new(v[0], v[1], v[2])
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Number of sorted triples over `{1..δ}`.
#[inline]
pub fn triple_count(delta: u32) -> usize {
    let d = delta as usize;
    d * (d + 1) * (d + 2) / 6
}

fn ranked_triples() -> &'static [Triple] {
    static TABLE: OnceLock<Vec<Triple>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut v = Vec::with_capacity(triple_count(MAX_DELTA));
        for k in 1..=MAX_DELTA {
            for j in 1..=k {
                for i in 1..=j {
                    v.push(Triple { i, j, k });
                }
            }
        }
        v
    })
}

/// All sorted triples over `{1..δ}` in rank order.
pub fn all_triples(delta: u32) -> Result<&'static [Triple]> {
    check_delta(delta)?;
    Ok(&ranked_triples()[..triple_count(delta)])
}

fn check_delta(delta: u32) -> Result<()> {
    if delta == 0 {
        return Err(Error::InvalidDiameter { delta, min: 1 });
    }
    if delta > MAX_DELTA {
        return Err(Error::DiameterTooLarge {
            delta,
            max: MAX_DELTA,
        });
    }
    Ok(())
}

/// Switches for the individual exclusion rules of [`realized_set_with`].
///
/// Everything is on by default; turning a rule off exists for mutation
/// testing of the classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CatalogRules {
    /// Odd perimeters below `2K₁+1` are excluded.
    pub k1_bound: bool,
    /// Odd perimeters above `2K₂ + 2·min` are excluded.
    pub k2_bound: bool,
    /// Even perimeters `≥ C₀` are excluded.
    pub even_cap: bool,
    /// Odd perimeters `≥ C₁` are excluded.
    pub odd_cap: bool,
}

impl Default for CatalogRules {
    fn default() -> Self {
        Self {
            k1_bound: true,
            k2_bound: true,
            even_cap: true,
            odd_cap: true,
        }
    }
}

impl CatalogRules {
    pub fn without_k2(self) -> Self {
        Self {
            k2_bound: false,
            ..self
        }
    }

    /// Whether a triangle type (already known to satisfy the triangle
    /// inequality) is realized by a graph with parameters `p`.
    #[inline]
    pub fn admits(&self, p: &ParameterTuple, t: Triple) -> bool {
        let per = t.perimeter();
        if per.is_multiple_of(2) {
            return !self.even_cap || per < p.c0();
        }
        let k1 = match p.k1() {
            K1::Infinity => return false,
            K1::Finite(k) => k,
        };
        if self.k1_bound && per < 2 * k1 + 1 {
            return false;
        }
        if self.k2_bound && per > 2 * p.k2() + 2 * t.min() {
            return false;
        }
        !self.odd_cap || per < p.c1()
    }
}

/// A set of sorted triples over `{1..δ}`, one bit per rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TriangleSet {
    delta: u32,
    bits: Vec<u64>,
}

impl TriangleSet {
    pub fn empty(delta: u32) -> Result<Self> {
        check_delta(delta)?;
        Ok(Self {
            delta,
            bits: vec![0; triple_count(delta).div_ceil(64)],
        })
    }

    pub fn from_triples<I: IntoIterator<Item = Triple>>(delta: u32, triples: I) -> Result<Self> {
        let mut s = Self::empty(delta)?;
        for t in triples {
            s.insert(t)?;
        }
        Ok(s)
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn insert(&mut self, t: Triple) -> Result<bool> {
        if t.k() > self.delta {
            return Err(Error::OutOfAlphabet {
                value: t.k(),
                delta: self.delta,
            });
        }
        Ok(self.insert_unchecked(t))
    }

    #[inline]
    fn insert_unchecked(&mut self, t: Triple) -> bool {
        let r = t.rank();
        let (w, b) = (r / 64, r % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        self.bits[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, t: Triple) -> bool {
        if t.k() > self.delta {
            return false;
        }
        let r = t.rank();
        self.bits[r / 64] & (1 << (r % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Members in rank order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        let table = ranked_triples();
        self.bits.iter().enumerate().flat_map(move |(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(table[w * 64 + b])
            })
        })
    }

    /// First member (in rank order) violating the triangle inequality.
    pub fn metric_violation(&self) -> Option<Triple> {
        self.iter().find(|t| !t.is_triangle())
    }

    pub fn is_metric(&self) -> bool {
        self.metric_violation().is_none()
    }

    /// Least `k < δ` for which `(1,k,k+1)` is missing.
    pub fn missing_geodesic(&self) -> Option<u32> {
        (1..self.delta).find(|&k| !self.contains(Triple::sorted(1, k, k + 1)))
    }

    pub fn contains_geodesics(&self) -> bool {
        self.missing_geodesic().is_none()
    }

    /// The distances `d` with `(i,i,d)` present: the distances occurring
    /// inside the fiber at distance `i`.
    pub fn fiber_distances(&self, i: u32) -> Vec<u32> {
        (1..=self.delta)
            .filter(|&d| self.contains(Triple::sorted(i, i, d)))
            .collect()
    }

    /// Largest `d` with `(i,i,d)` present, or 0.
    pub fn gamma_diameter(&self, i: u32) -> u32 {
        (1..=self.delta)
            .rev()
            .find(|&d| self.contains(Triple::sorted(i, i, d)))
            .unwrap_or(0)
    }

    /// Whether some member has perimeter `p`.
    pub fn has_perimeter(&self, p: u32) -> bool {
        self.iter().any(|t| t.perimeter() == p)
    }

    pub fn max_perimeter(&self) -> Option<u32> {
        self.iter().map(Triple::perimeter).max()
    }

    /// Elementwise image under a twist of the same diameter.
    pub fn image(&self, t: &Twist) -> Result<TriangleSet> {
        if t.delta() != self.delta {
            return Err(Error::DimensionMismatch {
                left: self.delta,
                right: t.delta(),
            });
        }
        let mut out = TriangleSet {
            delta: self.delta,
            bits: vec![0; self.bits.len()],
        };
        for x in self.iter() {
            out.insert_unchecked(Triple::sorted(
                t.image(x.i()),
                t.image(x.j()),
                t.image(x.k()),
            ));
        }
        Ok(out)
    }

    /// First member of the symmetric difference with `other`, in rank order.
    pub fn first_difference(&self, other: &TriangleSet) -> Option<Triple> {
        let table = ranked_triples();
        self.bits
            .iter()
            .zip(&other.bits)
            .enumerate()
            .find_map(|(w, (a, b))| {
                let x = a ^ b;
                (x != 0).then(|| table[w * 64 + x.trailing_zeros() as usize])
            })
    }
}

impl fmt::Debug for TriangleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TriangleSet[δ={}]", self.delta)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The triangle types realized by a graph with parameters `p`.
pub fn realized_set(p: &ParameterTuple) -> TriangleSet {
    realized_set_with(p, &CatalogRules::default())
}

pub fn realized_set_with(p: &ParameterTuple, rules: &CatalogRules) -> TriangleSet {
    // ParameterTuple construction already bounds delta.
    let mut s = TriangleSet::empty(p.delta()).expect("parameter tuple has a valid diameter");
    for &t in &ranked_triples()[..triple_count(p.delta())] {
        if t.is_triangle() && rules.admits(p, t) {
            s.insert_unchecked(t);
        }
    }
    s
}

/// Elementwise image; see [`TriangleSet::image`].
pub fn image_set(s: &TriangleSet, t: &Twist) -> Result<TriangleSet> {
    s.image(t)
}
