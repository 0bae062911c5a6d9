//! Permutations of the distance alphabet `{1..δ}`.
//!
//! A [`Twist`] relabels every distance relation of a graph of diameter `δ`.
//! The four generic-type twists are [`Twist::rho`], [`Twist::rho_inverse`]
//! and [`Twist::tau`] for `ε ∈ {0, 1}`; cycle twists come from
//! [`Twist::mu`].

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::triangle_catalog::Triple;

/// A bijection of `{1..δ}`, stored densely: `map[i - 1]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct Twist {
    map: Vec<u32>,
}

impl Twist {
    /// Builds a twist from its 1-indexed image list.
    pub fn from_images(map: Vec<u32>) -> Result<Self> {
        let delta = map.len() as u32;
        if delta == 0 {
            return Err(Error::InvalidDiameter { delta, min: 1 });
        }
        let mut seen = vec![false; map.len()];
        for &v in &map {
            if v == 0 || v > delta {
                return Err(Error::OutOfAlphabet { value: v, delta });
            }
            if std::mem::replace(&mut seen[(v - 1) as usize], true) {
                return Err(Error::InvalidArgument(format!(
                    "{v} occurs twice in image list {map:?}"
                )));
            }
        }
        Ok(Self { map })
    }

    pub fn identity(delta: u32) -> Result<Self> {
        if delta == 0 {
            return Err(Error::InvalidDiameter { delta, min: 1 });
        }
        Ok(Self {
            map: (1..=delta).collect(),
        })
    }

    /// `ρ(i) = 2i` for `i ≤ δ/2`, `2(δ−i)+1` otherwise.
    pub fn rho(delta: u32) -> Result<Self> {
        require_generic(delta)?;
        let map = (1..=delta)
            .map(|i| {
                if 2 * i <= delta {
                    2 * i
                } else {
                    2 * (delta - i) + 1
                }
            })
            .collect();
        Ok(Self { map })
    }

    /// `ρ⁻¹(i) = i/2` for even `i`, `δ − (i−1)/2` for odd `i`.
    pub fn rho_inverse(delta: u32) -> Result<Self> {
        require_generic(delta)?;
        let map = (1..=delta)
            .map(|i| {
                if i % 2 == 0 {
                    i / 2
                } else {
                    delta - (i - 1) / 2
                }
            })
            .collect();
        Ok(Self { map })
    }

    /// The involution `τ_ε`: swaps `i` with `(δ+ε)−i` when
    /// `min(i, (δ+ε)−i)` is odd and fixes `i` otherwise.
    pub fn tau(delta: u32, epsilon: u32) -> Result<Self> {
        require_generic(delta)?;
        if epsilon > 1 {
            return Err(Error::InvalidArgument(format!(
                "epsilon must be 0 or 1, got {epsilon}"
            )));
        }
        let s = delta + epsilon;
        let map = (1..=delta)
            .map(|i| {
                let partner = s - i;
                if i.min(partner) % 2 == 1 {
                    partner
                } else {
                    i
                }
            })
            .collect();
        Ok(Self { map })
    }

    /// The distance map induced on `C_n` by `v ↦ k·v (mod n)`, with `±d`
    /// identified. The result acts on `{1..⌊n/2⌋}`.
    pub fn mu(n: u32, k: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle length {n} < 3")));
        }
        if k == 0 || k >= n {
            return Err(Error::InvalidArgument(format!(
                "multiplier {k} not in 1..{n}"
            )));
        }
        if k.gcd(&n) != 1 {
            return Err(Error::NotAUnit { n, k });
        }
        let map = (1..=n / 2)
            .map(|d| {
                let r = (u64::from(k) * u64::from(d) % u64::from(n)) as u32;
                r.min(n - r)
            })
            .collect();
        Ok(Self { map })
    }

    /// The transposition `(a b)` on `{1..δ}`.
    pub fn transposition(delta: u32, a: u32, b: u32) -> Result<Self> {
        let mut t = Self::identity(delta)?;
        for v in [a, b] {
            if v == 0 || v > delta {
                return Err(Error::OutOfAlphabet { value: v, delta });
            }
        }
        t.map.swap((a - 1) as usize, (b - 1) as usize);
        Ok(t)
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"`; `"()"` is the identity.
    pub fn from_cycles(delta: u32, text: &str) -> Result<Self> {
        let mut map: Vec<u32> = (1..=delta).collect();
        let mut rest = text.trim();
        if delta == 0 {
            return Err(Error::InvalidDiameter { delta, min: 1 });
        }
        let mut touched = vec![false; delta as usize];
        while !rest.is_empty() {
            let body_start = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = body_start
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {text:?}")))?;
            let cycle = body_start[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad cycle entry {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            for &v in &cycle {
                if v == 0 || v > delta {
                    return Err(Error::OutOfAlphabet { value: v, delta });
                }
                if std::mem::replace(&mut touched[(v - 1) as usize], true) {
                    return Err(Error::Parse(format!(
                        "{v} appears in more than one cycle of {text:?}"
                    )));
                }
            }
            for (pos, &v) in cycle.iter().enumerate() {
                map[(v - 1) as usize] = cycle[(pos + 1) % cycle.len()];
            }
            rest = body_start[close + 1..].trim_start();
        }
        Ok(Self { map })
    }

    pub fn delta(&self) -> u32 {
        self.map.len() as u32
    }

    /// Image of the distance `i` (1-indexed).
    ///
    /// Panics if `i` is outside `1..=δ`.
    #[inline]
    pub fn image(&self, i: u32) -> u32 {
        self.map[(i - 1) as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.map
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Twist) -> Result<Twist> {
        self.same_delta(other)?;
        Ok(Twist {
            map: other.map.iter().map(|&x| self.image(x)).collect(),
        })
    }

    pub fn inverse(&self) -> Twist {
        let mut map = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            map[(v - 1) as usize] = i as u32 + 1;
        }
        Twist { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| v == i as u32 + 1)
    }

    pub fn is_involution(&self) -> bool {
        self.map.iter().all(|&v| self.image(self.image(v)) == v)
    }

    /// Sorted image of a triple.
    pub fn apply_to_triple(&self, t: Triple) -> Result<Triple> {
        let delta = self.delta();
        if t.k() > delta {
            return Err(Error::OutOfAlphabet {
                value: t.k(),
                delta,
            });
        }
        Ok(Triple::sorted(
            self.image(t.i()),
            self.image(t.j()),
            self.image(t.k()),
        ))
    }

    /// Non-trivial cycles, each starting at its least element, ordered by
    /// that element.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for start in 1..=self.delta() {
            if seen[(start - 1) as usize] {
                continue;
            }
            let mut cycle = vec![start];
            seen[(start - 1) as usize] = true;
            let mut cur = self.image(start);
            while cur != start {
                seen[(cur - 1) as usize] = true;
                cycle.push(cur);
                cur = self.image(cur);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    fn same_delta(&self, other: &Twist) -> Result<()> {
        if self.delta() != other.delta() {
            return Err(Error::DimensionMismatch {
                left: self.delta(),
                right: other.delta(),
            });
        }
        Ok(())
    }
}

fn require_generic(delta: u32) -> Result<()> {
    if delta < 3 {
        return Err(Error::InvalidDiameter { delta, min: 3 });
    }
    Ok(())
}

impl From<Twist> for Vec<u32> {
    fn from(t: Twist) -> Self {
        t.map
    }
}

impl TryFrom<Vec<u32>> for Twist {
    type Error = Error;

    fn try_from(map: Vec<u32>) -> Result<Self> {
        Twist::from_images(map)
    }
}

/// Cycle notation; the identity prints as `()`.
impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (n, v) in c.iter().enumerate() {
                if n > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Twist[δ={}]{}", self.delta(), self)
    }
}

/// The four twists that occur for graphs of generic type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenericKind {
    #[serde(rename = "rho")]
    Rho,
    #[serde(rename = "rho_inv")]
    RhoInverse,
    #[serde(rename = "tau0")]
    Tau0,
    #[serde(rename = "tau1")]
    Tau1,
}

impl GenericKind {
    pub const ALL: [GenericKind; 4] = [
        GenericKind::Rho,
        GenericKind::RhoInverse,
        GenericKind::Tau0,
        GenericKind::Tau1,
    ];

    pub fn twist(self, delta: u32) -> Result<Twist> {
        match self {
            GenericKind::Rho => Twist::rho(delta),
            GenericKind::RhoInverse => Twist::rho_inverse(delta),
            GenericKind::Tau0 => Twist::tau(delta, 0),
            GenericKind::Tau1 => Twist::tau(delta, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GenericKind::Rho => "rho",
            GenericKind::RhoInverse => "rho_inv",
            GenericKind::Tau0 => "tau0",
            GenericKind::Tau1 => "tau1",
        }
    }

    pub fn inverse(self) -> GenericKind {
        match self {
            GenericKind::Rho => GenericKind::RhoInverse,
            GenericKind::RhoInverse => GenericKind::Rho,
            k => k,
        }
    }
}

impl fmt::Display for GenericKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenericKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho" => Ok(GenericKind::Rho),
            "rho-inv" | "rho_inv" | "rhoinv" => Ok(GenericKind::RhoInverse),
            "tau0" => Ok(GenericKind::Tau0),
            "tau1" => Ok(GenericKind::Tau1),
            other => Err(Error::Parse(format!("unknown twist name {other:?}"))),
        }
    }
}
