//! Exhaustive search for twists and their twistable families at small
//! diameters, plus the classification of cycle twists.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_graphs::{apply_twist_metric, cycle_graph, find_isometry};
use crate::parameter_space::{table1_rows, CandidateFilter, ParameterTuple, Table1Row};
use crate::permutations::{GenericKind, Twist};
use crate::triangle_catalog::CatalogRules;
use crate::twistability::{Catalog, ImageCheck, TwistVerdict};

/// Largest diameter searched by default (`8!` permutations).
pub const DEFAULT_SEARCH_MAX_DELTA: u32 = 8;

#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub rules: CatalogRules,
    pub image_check: ImageCheck,
    pub candidates: CandidateFilter,
    pub max_delta: u32,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            rules: CatalogRules::default(),
            image_check: ImageCheck::Catalog,
            candidates: CandidateFilter::Admissible,
            max_delta: DEFAULT_SEARCH_MAX_DELTA,
            jobs: None,
        }
    }
}

/// A tuple twistable by some twist, together with the parameters of the
/// twisted graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FamilyMember {
    pub params: ParameterTuple,
    pub image: ParameterTuple,
}

/// Non-identity twists with a non-empty twistable family.
pub type TwistFamilies = BTreeMap<Twist, Vec<FamilyMember>>;

pub fn find_twists(delta: u32) -> Result<TwistFamilies> {
    find_twists_with(delta, &SearchConfig::default())
}

pub fn find_twists_with(delta: u32, cfg: &SearchConfig) -> Result<TwistFamilies> {
    if delta < 3 {
        return Err(Error::InvalidDiameter { delta, min: 3 });
    }
    if delta > cfg.max_delta {
        return Err(Error::Budget {
            what: "twist search diameter",
            requested: delta as usize,
            limit: cfg.max_delta as usize,
        });
    }
    let catalog = Catalog::build(delta, cfg.rules, cfg.candidates, cfg.max_delta)?;
    let run = || -> Result<TwistFamilies> {
        let found: Vec<(Twist, Vec<FamilyMember>)> = (1..=delta)
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                for t in metric_candidates(delta, first) {
                    if t.is_identity() {
                        continue;
                    }
                    let family: Vec<FamilyMember> = (0..catalog.len())
                        .filter_map(|n| match catalog.check_index_with(n, &t, cfg.image_check) {
                            TwistVerdict::Twistable { image } => Some(FamilyMember {
                                params: catalog.tuples()[n],
                                image,
                            }),
                            _ => None,
                        })
                        .collect();
                    if !family.is_empty() {
                        out.push((t, family));
                    }
                }
                out
            })
            .flatten()
            .collect();
        Ok(found.into_iter().collect())
    };
    match cfg.jobs {
        None => run(),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidState(format!("thread pool: {e}")))?
            .install(run),
    }
}

/// Permutations with `σ(1) = first` that map every geodesic triple
/// `(a, b, a+b)` to a triangle. Every catalog set holds all geodesic
/// triples, so the others cannot be twists.
fn metric_candidates(delta: u32, first: u32) -> Vec<Twist> {
    let d = delta as usize;
    let mut map = vec![0u32; d + 1];
    let mut used = vec![false; d + 1];
    map[1] = first;
    used[first as usize] = true;
    let mut out = Vec::new();
    fn ok_at(map: &[u32], pos: usize) -> bool {
        // every geodesic (a, pos - a, pos) with both parts placed
        (1..=pos / 2).all(|a| {
            let (x, y, z) = (map[a], map[pos - a], map[pos]);
            x + y >= z && x + z >= y && y + z >= x
        })
    }
    fn go(pos: usize, d: usize, map: &mut [u32], used: &mut [bool], out: &mut Vec<Twist>) {
        if pos > d {
            out.push(Twist::from_images(map[1..].to_vec()).expect("bijection"));
            return;
        }
        for v in 1..=d {
            if used[v] {
                continue;
            }
            map[pos] = v as u32;
            if ok_at(map, pos) {
                used[v] = true;
                go(pos + 1, d, map, used, out);
                used[v] = false;
            }
        }
        map[pos] = 0;
    }
    go(2, d, &mut map, &mut used, &mut out);
    out
}

/// The generic twists of one diameter keyed by permutation, each with
/// every formula name that evaluates to it.
pub fn named_generic_twists(delta: u32) -> Result<BTreeMap<Twist, Vec<GenericKind>>> {
    let mut out: BTreeMap<Twist, Vec<GenericKind>> = BTreeMap::new();
    for kind in GenericKind::ALL {
        out.entry(kind.twist(delta)?).or_default().push(kind);
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub delta: u32,
    pub pass: bool,
    /// Found twists, with the formula names matching each.
    pub found: Vec<(Twist, Vec<GenericKind>)>,
    /// Permutations matching more than one formula.
    pub coincidences: Vec<(Twist, Vec<GenericKind>)>,
    pub extra: Vec<Twist>,
    pub missing: Vec<Twist>,
}

pub fn verify_theorem_twists(delta: u32) -> Result<TheoremReport> {
    verify_theorem_twists_with(delta, &SearchConfig::default())
}

pub fn verify_theorem_twists_with(delta: u32, cfg: &SearchConfig) -> Result<TheoremReport> {
    let families = find_twists_with(delta, cfg)?;
    theorem_report(delta, &families)
}

/// Compares a search result to the four generic twists.
pub fn theorem_report(delta: u32, families: &TwistFamilies) -> Result<TheoremReport> {
    let named = named_generic_twists(delta)?;
    let found = families
        .keys()
        .map(|t| (t.clone(), named.get(t).cloned().unwrap_or_default()))
        .collect();
    let coincidences = named
        .iter()
        .filter(|(_, names)| names.len() > 1)
        .map(|(t, names)| (t.clone(), names.clone()))
        .collect();
    let extra: Vec<Twist> = families
        .keys()
        .filter(|t| !named.contains_key(t))
        .cloned()
        .collect();
    let missing: Vec<Twist> = named
        .keys()
        .filter(|t| families.get(*t).is_none_or(Vec::is_empty))
        .cloned()
        .collect();
    Ok(TheoremReport {
        delta,
        pass: extra.is_empty() && missing.is_empty(),
        found,
        coincidences,
        extra,
        missing,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RowCheck {
    pub row: Table1Row,
    pub found: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Report {
    pub delta: u32,
    pub pass: bool,
    pub rows: Vec<RowCheck>,
    /// Tuples twistable by a generic twist but absent from its rows.
    pub unlisted: Vec<(GenericKind, ParameterTuple)>,
}

pub fn verify_table1(delta: u32) -> Result<Table1Report> {
    verify_table1_with(delta, &SearchConfig::default())
}

pub fn verify_table1_with(delta: u32, cfg: &SearchConfig) -> Result<Table1Report> {
    let families = find_twists_with(delta, cfg)?;
    table1_report(delta, &families)
}

pub fn table1_report(delta: u32, families: &TwistFamilies) -> Result<Table1Report> {
    let expected = table1_rows(delta)?;
    let mut rows = Vec::new();
    let mut unlisted = Vec::new();
    for kind in GenericKind::ALL {
        let twist = kind.twist(delta)?;
        let found: BTreeSet<ParameterTuple> = families
            .get(&twist)
            .map(|f| f.iter().map(|m| m.params).collect())
            .unwrap_or_default();
        let listed: BTreeSet<ParameterTuple> = expected
            .iter()
            .filter(|r| r.kind == kind)
            .map(|r| r.params)
            .collect();
        for r in expected.iter().filter(|r| r.kind == kind) {
            rows.push(RowCheck {
                row: *r,
                found: found.contains(&r.params),
            });
        }
        unlisted.extend(found.difference(&listed).map(|&p| (kind, p)));
    }
    Ok(Table1Report {
        delta,
        pass: rows.iter().all(|r| r.found) && unlisted.is_empty(),
        rows,
        unlisted,
    })
}

/// A twist of the cycle `C_n` induced by multiplication by a unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleTwist {
    pub k: u32,
    pub twist: Twist,
    /// The relabelled metric of `C_n` is a graph metric isometric to `C_n`.
    pub verified: bool,
}

/// One twist per unit pair `{k, n − k}`, smallest `k` first, each checked
/// on the cycle itself.
pub fn classify_cycle_twists(n: u32) -> Result<Vec<CycleTwist>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycle length {n} < 3")));
    }
    let cycle = cycle_graph(n as usize)?;
    let mut out: Vec<CycleTwist> = Vec::new();
    for k in (1..=n / 2).filter(|k| k.gcd(&n) == 1) {
        let twist = Twist::mu(n, k)?;
        if out.iter().any(|c| c.twist == twist) {
            continue;
        }
        let tm = apply_twist_metric(&cycle, &twist)?;
        let verified = tm.report.is_valid() && find_isometry(&tm.matrix, cycle.metric()).is_some();
        out.push(CycleTwist { k, twist, verified });
    }
    Ok(out)
}
