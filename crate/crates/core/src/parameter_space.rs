//! Numerical parameters `(δ, K₁, K₂, C₀, C₁)`.
//!
//! A tuple determines a triangle set through
//! [`realized_set`](crate::triangle_catalog::realized_set); going the other
//! way, [`derive_parameters`] reads the parameters off a triangle set. A
//! tuple is *self-consistent* when the two maps round-trip, and
//! *admissible* when in addition its triangle set obeys the structural
//! constraints every metrically homogeneous graph satisfies (see
//! [`check_admissible`]).

use std::cmp::Ordering;
use std::fmt;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutations::GenericKind;
use crate::triangle_catalog::{realized_set_with, CatalogRules, TriangleSet, Triple, MAX_DELTA};

/// Default upper bound on `δ` for exhaustive tuple enumeration.
pub const DEFAULT_ENUMERATION_MAX_DELTA: u32 = 10;

/// `K₁`: the least `k` with a `(1,k,k)` triangle, or infinity when there is
/// none (the bipartite case). `Infinity` orders above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum K1 {
    Finite(u32),
    Infinity,
}

impl K1 {
    pub fn finite(self) -> Option<u32> {
        match self {
            K1::Finite(k) => Some(k),
            K1::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, K1::Infinity)
    }
}

impl fmt::Display for K1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            K1::Finite(k) => write!(f, "{k}"),
            K1::Infinity => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for K1 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(K1::Infinity),
            other => other
                .parse::<u32>()
                .map(K1::Finite)
                .map_err(|_| Error::Parse(format!("bad K1 value {other:?}"))),
        }
    }
}

impl Serialize for K1 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            K1::Finite(k) => s.serialize_u32(*k),
            K1::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for K1 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = K1;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive integer or \"inf\"")
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<K1, E> {
                u32::try_from(v).map(K1::Finite).map_err(E::custom)
            }
            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<K1, E> {
                u32::try_from(v).map(K1::Finite).map_err(E::custom)
            }
            fn visit_f64<E: serde::de::Error>(self, v: f64) -> std::result::Result<K1, E> {
                // csv reads "inf" as a float
                if v == f64::INFINITY {
                    Ok(K1::Infinity)
                } else {
                    Err(E::custom(format!("bad K1 value {v}")))
                }
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<K1, E> {
                v.parse().map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

/// A structurally valid parameter tuple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "TupleRecord", try_from = "TupleRecord")]
pub struct ParameterTuple {
    delta: u32,
    k1: K1,
    k2: u32,
    c0: u32,
    c1: u32,
}

impl ParameterTuple {
    pub fn new(delta: u32, k1: K1, k2: u32, c0: u32, c1: u32) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if delta == 0 {
            return Err(Error::InvalidDiameter { delta, min: 1 });
        }
        if delta > MAX_DELTA {
            return Err(Error::DiameterTooLarge {
                delta,
                max: MAX_DELTA,
            });
        }
        if !c0.is_multiple_of(2) || c1 % 2 != 1 {
            return bad(format!("C0={c0} must be even and C1={c1} odd"));
        }
        let top = 3 * delta + 2;
        if !(2 * delta + 2..=top).contains(&c0) {
            return bad(format!("C0={c0} outside {}..={top}", 2 * delta + 2));
        }
        if !(2 * delta + 1..=top).contains(&c1) {
            return bad(format!("C1={c1} outside {}..={top}", 2 * delta + 1));
        }
        match k1 {
            K1::Infinity => {
                if k2 != 0 || c1 != 2 * delta + 1 {
                    return bad(format!(
                        "K1=inf requires K2=0 and C1={}, got K2={k2}, C1={c1}",
                        2 * delta + 1
                    ));
                }
            }
            K1::Finite(k) => {
                if k == 0 || k > k2 || k2 > delta {
                    return bad(format!(
                        "need 1 <= K1 <= K2 <= {delta}, got K1={k}, K2={k2}"
                    ));
                }
            }
        }
        Ok(Self {
            delta,
            k1,
            k2,
            c0,
            c1,
        })
    }

    /// Builds a tuple from `(C, C′)`, assigning them to `C₀`/`C₁` by parity.
    pub fn from_c_pair(delta: u32, k1: K1, k2: u32, c: u32, c_prime: u32) -> Result<Self> {
        if c % 2 == c_prime % 2 {
            return Err(Error::InvalidArgument(format!(
                "C={c} and C'={c_prime} have the same parity; C0 is the even \
                 excluded perimeter and C1 the odd one, so exactly one of them must be even"
            )));
        }
        let (c0, c1) = if c.is_multiple_of(2) {
            (c, c_prime)
        } else {
            (c_prime, c)
        };
        Self::new(delta, k1, k2, c0, c1)
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }
    pub fn k1(&self) -> K1 {
        self.k1
    }
    pub fn k2(&self) -> u32 {
        self.k2
    }
    pub fn c0(&self) -> u32 {
        self.c0
    }
    pub fn c1(&self) -> u32 {
        self.c1
    }
    pub fn c(&self) -> u32 {
        self.c0.min(self.c1)
    }
    pub fn c_prime(&self) -> u32 {
        self.c0.max(self.c1)
    }

    pub fn is_bipartite(&self) -> bool {
        self.k1.is_infinite()
    }

    /// Every perimeter is at most `2δ`.
    pub fn is_antipodal(&self) -> bool {
        !self.is_bipartite() && self.c1 == 2 * self.delta + 1 && self.c0 == 2 * self.delta + 2
    }

    /// Ordering used for reports: by `K₁` (infinity last), `K₂`, `C`, `C′`.
    pub fn report_cmp(&self, other: &Self) -> Ordering {
        (self.delta, self.k1, self.k2, self.c(), self.c_prime()).cmp(&(
            other.delta,
            other.k1,
            other.k2,
            other.c(),
            other.c_prime(),
        ))
    }
}

impl fmt::Display for ParameterTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(δ={}, K1={}, K2={}, C={}, C'={})",
            self.delta,
            self.k1,
            self.k2,
            self.c(),
            self.c_prime()
        )
    }
}

impl fmt::Debug for ParameterTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Flat record used for JSON and CSV: `delta,K1,K2,C,Cprime`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleRecord {
    pub delta: u32,
    #[serde(rename = "K1")]
    pub k1: K1,
    #[serde(rename = "K2")]
    pub k2: u32,
    #[serde(rename = "C")]
    pub c: u32,
    #[serde(rename = "Cprime")]
    pub c_prime: u32,
}

impl From<ParameterTuple> for TupleRecord {
    fn from(p: ParameterTuple) -> Self {
        Self {
            delta: p.delta,
            k1: p.k1,
            k2: p.k2,
            c: p.c(),
            c_prime: p.c_prime(),
        }
    }
}

impl TryFrom<TupleRecord> for ParameterTuple {
    type Error = Error;
    fn try_from(r: TupleRecord) -> Result<Self> {
        ParameterTuple::from_c_pair(r.delta, r.k1, r.k2, r.c, r.c_prime)
    }
}

/// Writes tuples as CSV with header `delta,K1,K2,C,Cprime`.
pub fn write_tuples_csv<W: Write>(out: W, tuples: &[ParameterTuple]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for &p in tuples {
        w.serialize(TupleRecord::from(p))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_tuples_csv<R: Read>(input: R) -> Result<Vec<ParameterTuple>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize::<TupleRecord>()
        .map(|rec| ParameterTuple::try_from(rec?))
        .collect()
}

/// A member whose perimeter lies at or above a derived cap: the set has a
/// gap below some realized perimeter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapAnomaly {
    pub triple: Triple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Derivation {
    pub params: ParameterTuple,
    pub anomaly: Option<GapAnomaly>,
}

/// Reads `(K₁, K₂, C₀, C₁)` off a metric triangle set.
pub fn derive_parameters(t: &TriangleSet) -> Result<Derivation> {
    if let Some(bad) = t.metric_violation() {
        return Err(Error::InvalidInput(format!(
            "triangle set contains the non-metric triple {bad}"
        )));
    }
    let delta = t.delta();
    let ks: Vec<u32> = (1..=delta)
        .filter(|&k| t.contains(Triple::sorted(1, k, k)))
        .collect();
    let (k1, k2) = match (ks.first(), ks.last()) {
        (Some(&lo), Some(&hi)) => (K1::Finite(lo), hi),
        _ => (K1::Infinity, 0),
    };
    let mut perimeters = vec![false; (3 * delta + 3) as usize];
    for x in t.iter() {
        perimeters[x.perimeter() as usize] = true;
    }
    let least_missing = |start: u32| {
        (start..)
            .step_by(2)
            .find(|&p| !perimeters.get(p as usize).copied().unwrap_or(false))
            .expect("perimeters are bounded")
    };
    let c0 = least_missing(2 * delta + 2);
    let c1 = least_missing(2 * delta + 1);
    let anomaly = t
        .iter()
        .find(|x| {
            let p = x.perimeter();
            if p % 2 == 0 {
                p >= c0
            } else {
                p >= c1
            }
        })
        .map(|triple| GapAnomaly { triple });
    let params = ParameterTuple::new(delta, k1, k2, c0, c1)?;
    Ok(Derivation { params, anomaly })
}

/// Why a tuple fails to be admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inadmissible {
    /// Re-deriving parameters from the realized set gives a different tuple.
    NotSelfConsistent { derived: ParameterTuple },
    /// The realized set has a perimeter gap below a realized perimeter.
    Gap { triple: Triple },
    /// Antipodal tuple with `K₁ + K₂ ≠ δ`.
    AntipodalSum { k1: u32, k2: u32 },
    /// A triangle of perimeter `2δ + d` exists although the fiber at
    /// distance `δ` has diameter below `d`.
    PerimeterBeyondFiber { triple: Triple, fiber_diameter: u32 },
    /// The fiber at distance `fiber` contains an edge but is not connected:
    /// distance `missing` is absent below its diameter.
    FiberGap { fiber: u32, missing: u32 },
}

impl fmt::Display for Inadmissible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inadmissible::NotSelfConsistent { derived } => {
                write!(f, "not self-consistent: realized set derives {derived}")
            }
            Inadmissible::Gap { triple } => write!(f, "perimeter gap below {triple}"),
            Inadmissible::AntipodalSum { k1, k2 } => {
                write!(
                    f,
                    "antipodal but K1+K2={} differs from the diameter",
                    k1 + k2
                )
            }
            Inadmissible::PerimeterBeyondFiber {
                triple,
                fiber_diameter,
            } => write!(
                f,
                "{triple} has perimeter beyond 2δ+{fiber_diameter}, the top fiber diameter"
            ),
            Inadmissible::FiberGap { fiber, missing } => write!(
                f,
                "fiber at distance {fiber} has an edge but misses distance {missing}"
            ),
        }
    }
}

/// Checks a tuple against its own realized set (generated with `rules`).
pub fn check_admissible_with(
    p: &ParameterTuple,
    rules: &CatalogRules,
) -> std::result::Result<(), Inadmissible> {
    let set = realized_set_with(p, rules);
    let d = derive_parameters(&set).expect("realized sets are metric");
    if d.params != *p {
        return Err(Inadmissible::NotSelfConsistent { derived: d.params });
    }
    if let Some(a) = d.anomaly {
        return Err(Inadmissible::Gap { triple: a.triple });
    }
    structural_constraints(p, &set)
}

/// The constraints a triangle set must meet beyond self-consistency:
///
/// * antipodal tuples have `K₁ + K₂ = δ`;
/// * a triangle of perimeter `2δ + d` forces the top fiber to have
///   diameter at least `d` (in particular, a singleton top fiber allows no
///   perimeter above `2δ`);
/// * a fiber containing an edge is connected, so its distances form an
///   interval starting at 1.
pub fn structural_constraints(
    p: &ParameterTuple,
    set: &TriangleSet,
) -> std::result::Result<(), Inadmissible> {
    let delta = p.delta();
    if p.is_antipodal() {
        let k1 = p.k1().finite().expect("antipodal tuples are not bipartite");
        if k1 + p.k2() != delta {
            return Err(Inadmissible::AntipodalSum { k1, k2: p.k2() });
        }
    }
    let top = set.gamma_diameter(delta);
    if let Some(triple) = set.iter().find(|t| t.perimeter() > 2 * delta + top) {
        return Err(Inadmissible::PerimeterBeyondFiber {
            triple,
            fiber_diameter: top,
        });
    }
    for i in 1..=delta {
        if !set.contains(Triple::sorted(i, i, 1)) {
            continue;
        }
        let diam = set.gamma_diameter(i);
        if let Some(missing) = (1..diam).find(|&d| !set.contains(Triple::sorted(i, i, d))) {
            return Err(Inadmissible::FiberGap { fiber: i, missing });
        }
    }
    Ok(())
}

pub fn check_admissible(p: &ParameterTuple) -> std::result::Result<(), Inadmissible> {
    check_admissible_with(p, &CatalogRules::default())
}

pub fn is_admissible(p: &ParameterTuple) -> bool {
    check_admissible(p).is_ok()
}

/// `derive_parameters(realized_set(p)) == p` with no gap anomaly.
pub fn is_self_consistent(p: &ParameterTuple) -> bool {
    is_self_consistent_with(p, &CatalogRules::default())
}

pub fn is_self_consistent_with(p: &ParameterTuple, rules: &CatalogRules) -> bool {
    let d = derive_parameters(&realized_set_with(p, rules)).expect("realized sets are metric");
    d.params == *p && d.anomaly.is_none()
}

/// Every structurally valid tuple of diameter `delta`, in lexicographic
/// order.
pub fn structural_tuples(delta: u32) -> Result<Vec<ParameterTuple>> {
    let mut out = Vec::new();
    let top = 3 * delta + 2;
    let mut k1s: Vec<K1> = (1..=delta).map(K1::Finite).collect();
    k1s.push(K1::Infinity);
    for k1 in k1s {
        let k2s: Vec<u32> = match k1 {
            K1::Finite(k) => (k..=delta).collect(),
            K1::Infinity => vec![0],
        };
        for k2 in k2s {
            for c0 in (2 * delta + 2..=top).step_by(2) {
                let c1_range: Vec<u32> = if k1.is_infinite() {
                    vec![2 * delta + 1]
                } else {
                    (2 * delta + 1..=top).step_by(2).collect()
                };
                for c1 in c1_range {
                    out.push(ParameterTuple::new(delta, k1, k2, c0, c1)?);
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All admissible tuples of diameter `delta` (3 ≤ δ ≤ 10), lexicographic.
pub fn enumerate_candidates(delta: u32) -> Result<Vec<ParameterTuple>> {
    enumerate_candidates_with(
        delta,
        &CatalogRules::default(),
        DEFAULT_ENUMERATION_MAX_DELTA,
    )
}

pub fn enumerate_candidates_with(
    delta: u32,
    rules: &CatalogRules,
    max_delta: u32,
) -> Result<Vec<ParameterTuple>> {
    if delta < 3 {
        return Err(Error::InvalidDiameter { delta, min: 3 });
    }
    if delta > max_delta {
        return Err(Error::Budget {
            what: "tuple enumeration diameter",
            requested: delta as usize,
            limit: max_delta as usize,
        });
    }
    Ok(structural_tuples(delta)?
        .into_iter()
        .filter(|p| check_admissible_with(p, rules).is_ok())
        .collect())
}

/// Which structurally valid tuples count as candidates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum CandidateFilter {
    /// Self-consistent and meeting [`structural_constraints`].
    #[default]
    Admissible,
    /// Self-consistent only.
    SelfConsistent,
}

/// Candidates under an explicit filter; same limits as
/// [`enumerate_candidates_with`].
pub fn enumerate_filtered(
    delta: u32,
    rules: &CatalogRules,
    filter: CandidateFilter,
    max_delta: u32,
) -> Result<Vec<ParameterTuple>> {
    match filter {
        CandidateFilter::Admissible => enumerate_candidates_with(delta, rules, max_delta),
        CandidateFilter::SelfConsistent => {
            enumerate_candidates_with(delta, rules, max_delta)?;
            Ok(structural_tuples(delta)?
                .into_iter()
                .filter(|p| is_self_consistent_with(p, rules))
                .collect())
        }
    }
}

/// One row of the table of twistable parameter families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub kind: GenericKind,
    pub params: ParameterTuple,
    pub bipartite: bool,
    pub exceptional: bool,
}

/// The expected twistable families at diameter `delta`.
pub fn table1_rows(delta: u32) -> Result<Vec<Table1Row>> {
    if delta < 3 {
        return Err(Error::InvalidDiameter { delta, min: 3 });
    }
    let d = delta;
    let row = |kind, k1, k2, c, cp, bipartite, exceptional| -> Result<Table1Row> {
        Ok(Table1Row {
            kind,
            params: ParameterTuple::from_c_pair(d, k1, k2, c, cp)?,
            bipartite,
            exceptional,
        })
    };
    let mut rows = vec![
        row(
            GenericKind::Rho,
            K1::Finite(1),
            d,
            2 * d + 2,
            2 * d + 3,
            false,
            false,
        )?,
        row(
            GenericKind::RhoInverse,
            K1::Finite(d),
            d,
            3 * d + 1,
            3 * d + 2,
            false,
            false,
        )?,
    ];
    for (eps, kind) in [(0, GenericKind::Tau0), (1, GenericKind::Tau1)] {
        let s = d + eps;
        rows.push(row(
            kind,
            K1::Finite(s / 2),
            s.div_ceil(2),
            2 * s + 1,
            2 * s + 2,
            false,
            false,
        )?);
        if d % 2 == eps {
            rows.push(row(
                kind,
                K1::Infinity,
                0,
                2 * d + 1,
                2 * s + 2,
                true,
                false,
            )?);
        }
    }
    let exceptional: &[(u32, u32, u32, u32)] = match d {
        3 => &[(1, 2, 10, 11), (1, 2, 9, 10), (2, 2, 10, 11)],
        4 => &[(1, 3, 11, 14), (1, 3, 11, 12), (2, 3, 11, 14)],
        _ => &[],
    };
    for &(k1, k2, c, cp) in exceptional {
        rows.push(row(
            GenericKind::Tau1,
            K1::Finite(k1),
            k2,
            c,
            cp,
            false,
            true,
        )?);
    }
    Ok(rows)
}
