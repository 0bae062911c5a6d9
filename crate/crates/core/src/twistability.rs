//! Whether a twist carries a graph with given parameters to another
//! metrically homogeneous graph.
//!
//! The image of the realized triangle set must be a metric space that
//! contains every `(1,k,k+1)`. On top of that, at the level of parameter
//! catalogs, the image must itself be the realized set of an admissible
//! tuple: a relabelled homogeneous graph is still homogeneous, so its
//! triangle set has to come from the same catalog.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::parameter_space::{
    check_admissible_with, derive_parameters, enumerate_filtered, CandidateFilter, Inadmissible,
    ParameterTuple, TupleRecord, DEFAULT_ENUMERATION_MAX_DELTA,
};
use crate::permutations::Twist;
use crate::triangle_catalog::{realized_set_with, CatalogRules, TriangleSet, Triple};

/// Why a metric, geodesic-complete image still fails to be a catalog set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageDefect {
    /// The image differs from the realized set of its own derived
    /// parameters; `triple` is the first difference in rank order.
    Mismatch { triple: Triple },
    /// The derived parameters are not admissible.
    Inadmissible(Inadmissible),
    /// No fiber contains an edge, yet `triple` has odd perimeter, so no
    /// parameter tuple describes the image.
    NoParameters { triple: Triple },
}

impl fmt::Display for ImageDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageDefect::Mismatch { triple } => {
                write!(
                    f,
                    "image and catalog set of its parameters differ at {triple}"
                )
            }
            ImageDefect::Inadmissible(why) => write!(f, "image parameters inadmissible: {why}"),
            ImageDefect::NoParameters { triple } => {
                write!(f, "image has no (k,k,1) triangle but contains {triple}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistVerdict {
    Twistable {
        image: ParameterTuple,
    },
    MetricViolation {
        witness: Triple,
    },
    MissingGeodesic {
        k: u32,
    },
    NotCatalog {
        derived: Option<ParameterTuple>,
        defect: ImageDefect,
    },
}

impl TwistVerdict {
    pub fn is_twistable(&self) -> bool {
        matches!(self, TwistVerdict::Twistable { .. })
    }

    pub fn image(&self) -> Option<ParameterTuple> {
        match self {
            TwistVerdict::Twistable { image } => Some(*image),
            _ => None,
        }
    }

    pub fn outcome(&self) -> &'static str {
        match self {
            TwistVerdict::Twistable { .. } => "TWISTABLE",
            TwistVerdict::MetricViolation { .. } => "METRIC_VIOLATION",
            TwistVerdict::MissingGeodesic { .. } => "MISSING_GEODESIC",
            TwistVerdict::NotCatalog { .. } => "NOT_CATALOG",
        }
    }

    /// Short text for the CSV `witness` column.
    pub fn witness_text(&self) -> String {
        match self {
            TwistVerdict::Twistable { .. } => String::new(),
            TwistVerdict::MetricViolation { witness } => witness.to_string(),
            TwistVerdict::MissingGeodesic { k } => format!("k={k}"),
            TwistVerdict::NotCatalog { defect, .. } => match defect {
                ImageDefect::Mismatch { triple } | ImageDefect::NoParameters { triple } => {
                    triple.to_string()
                }
                ImageDefect::Inadmissible(why) => why.to_string(),
            },
        }
    }

    pub fn to_record(&self) -> VerdictRecord {
        let (witness, image_params, detail) = match *self {
            TwistVerdict::Twistable { image } => (
                serde_json::Value::Null,
                Some(image.into()),
                Some("twistable (catalog-level)".to_owned()),
            ),
            TwistVerdict::MetricViolation { witness } => {
                (serde_json::json!(<[u32; 3]>::from(witness)), None, None)
            }
            TwistVerdict::MissingGeodesic { k } => (serde_json::json!(k), None, None),
            TwistVerdict::NotCatalog { derived, defect } => {
                let w = match defect {
                    ImageDefect::Mismatch { triple } | ImageDefect::NoParameters { triple } => {
                        serde_json::json!(<[u32; 3]>::from(triple))
                    }
                    ImageDefect::Inadmissible(_) => serde_json::Value::Null,
                };
                let detail = match derived {
                    Some(d) => format!("derived {d}: {defect}"),
                    None => defect.to_string(),
                };
                (w, None, Some(detail))
            }
        };
        VerdictRecord {
            outcome: self.outcome(),
            witness,
            image_params,
            detail,
        }
    }
}

/// How much is demanded of a metric image with all geodesic triangles.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum ImageCheck {
    /// The image must be the realized set of an admissible tuple.
    #[default]
    Catalog,
    /// Nothing more; weaker, kept to measure what the catalog check adds.
    MetricOnly,
}

/// JSON form of a verdict: `{outcome, witness, image_params}`.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictRecord {
    pub outcome: &'static str,
    pub witness: serde_json::Value,
    pub image_params: Option<TupleRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Decides twistability of the tuple `p` by `t`.
///
/// `p` must be admissible and of the same diameter as `t`.
pub fn check_twistable(p: &ParameterTuple, t: &Twist) -> Result<TwistVerdict> {
    check_twistable_with(p, t, &CatalogRules::default())
}

pub fn check_twistable_with(
    p: &ParameterTuple,
    t: &Twist,
    rules: &CatalogRules,
) -> Result<TwistVerdict> {
    if t.delta() != p.delta() {
        return Err(Error::DimensionMismatch {
            left: p.delta(),
            right: t.delta(),
        });
    }
    if let Err(why) = check_admissible_with(p, rules) {
        return Err(Error::InvalidInput(format!("{p} is not admissible: {why}")));
    }
    let image = realized_set_with(p, rules).image(t)?;
    Ok(judge_image(&image, ImageCheck::Catalog, |q| {
        check_admissible_with(q, rules)
            .map(|()| realized_set_with(q, rules))
            .map_err(ImageDefect::Inadmissible)
    }))
}

/// Core judgment on an image set; `catalog` returns the realized set of an
/// admissible tuple or why it has none.
fn judge_image<F>(image: &TriangleSet, mode: ImageCheck, catalog: F) -> TwistVerdict
where
    F: FnOnce(&ParameterTuple) -> std::result::Result<TriangleSet, ImageDefect>,
{
    if let Some(witness) = image.metric_violation() {
        return TwistVerdict::MetricViolation { witness };
    }
    if let Some(k) = image.missing_geodesic() {
        return TwistVerdict::MissingGeodesic { k };
    }
    let derived = match derive_parameters(image) {
        Ok(d) => d.params,
        Err(_) => {
            let triple = image
                .iter()
                .find(|t| t.perimeter() % 2 == 1)
                .expect("derivation of a metric set fails only on odd perimeters");
            return TwistVerdict::NotCatalog {
                derived: None,
                defect: ImageDefect::NoParameters { triple },
            };
        }
    };
    if mode == ImageCheck::MetricOnly {
        return TwistVerdict::Twistable { image: derived };
    }
    match catalog(&derived) {
        Ok(expected) => match image.first_difference(&expected) {
            None => TwistVerdict::Twistable { image: derived },
            Some(triple) => TwistVerdict::NotCatalog {
                derived: Some(derived),
                defect: ImageDefect::Mismatch { triple },
            },
        },
        Err(defect) => TwistVerdict::NotCatalog {
            derived: Some(derived),
            defect,
        },
    }
}

/// Parameters of the image graph; errors unless `p` is twistable by `t`.
pub fn twist_image_parameters(p: &ParameterTuple, t: &Twist) -> Result<ParameterTuple> {
    match check_twistable(p, t)? {
        TwistVerdict::Twistable { image } => Ok(image),
        other => Err(Error::InvalidState(format!(
            "{p} is not twistable by {t}: {}",
            other.outcome()
        ))),
    }
}

/// All admissible tuples of one diameter with their realized sets, for
/// repeated twistability checks.
#[derive(Debug, Clone)]
pub struct Catalog {
    delta: u32,
    rules: CatalogRules,
    tuples: Vec<ParameterTuple>,
    sets: Vec<TriangleSet>,
    admissible: Vec<bool>,
    index: HashMap<ParameterTuple, usize>,
}

impl Catalog {
    pub fn new(delta: u32) -> Result<Self> {
        Self::with_rules(
            delta,
            CatalogRules::default(),
            DEFAULT_ENUMERATION_MAX_DELTA,
        )
    }

    pub fn with_rules(delta: u32, rules: CatalogRules, max_delta: u32) -> Result<Self> {
        Self::build(delta, rules, CandidateFilter::Admissible, max_delta)
    }

    /// A catalog over the tuples passing `filter`. Image sets are still
    /// required to come from admissible tuples.
    pub fn build(
        delta: u32,
        rules: CatalogRules,
        filter: CandidateFilter,
        max_delta: u32,
    ) -> Result<Self> {
        let tuples = enumerate_filtered(delta, &rules, filter, max_delta)?;
        let sets: Vec<_> = tuples
            .iter()
            .map(|p| realized_set_with(p, &rules))
            .collect();
        let admissible = match filter {
            CandidateFilter::Admissible => vec![true; tuples.len()],
            CandidateFilter::SelfConsistent => tuples
                .iter()
                .map(|p| check_admissible_with(p, &rules).is_ok())
                .collect(),
        };
        let index = tuples.iter().enumerate().map(|(n, &p)| (p, n)).collect();
        Ok(Self {
            delta,
            rules,
            tuples,
            sets,
            admissible,
            index,
        })
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn rules(&self) -> &CatalogRules {
        &self.rules
    }

    pub fn tuples(&self) -> &[ParameterTuple] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, p: &ParameterTuple) -> bool {
        self.index.contains_key(p)
    }

    pub fn realized(&self, p: &ParameterTuple) -> Option<&TriangleSet> {
        self.index.get(p).map(|&n| &self.sets[n])
    }

    /// Same judgment as [`check_twistable`] for the `n`-th catalog tuple.
    pub fn check_index(&self, n: usize, t: &Twist) -> TwistVerdict {
        self.check_index_with(n, t, ImageCheck::Catalog)
    }

    pub fn check_index_with(&self, n: usize, t: &Twist, mode: ImageCheck) -> TwistVerdict {
        let image = self.sets[n]
            .image(t)
            .expect("catalog and twist share a diameter");
        self.judge(&image, mode)
    }

    pub fn check(&self, p: &ParameterTuple, t: &Twist) -> Result<TwistVerdict> {
        if t.delta() != self.delta {
            return Err(Error::DimensionMismatch {
                left: self.delta,
                right: t.delta(),
            });
        }
        let n = *self
            .index
            .get(p)
            .ok_or_else(|| Error::InvalidInput(format!("{p} is not an admissible tuple")))?;
        Ok(self.check_index(n, t))
    }

    fn judge(&self, image: &TriangleSet, mode: ImageCheck) -> TwistVerdict {
        judge_image(image, mode, |q| match self.index.get(q) {
            Some(&n) if self.admissible[n] => Ok(self.sets[n].clone()),
            _ => check_admissible_with(q, &self.rules)
                .map(|()| realized_set_with(q, &self.rules))
                .map_err(ImageDefect::Inadmissible),
        })
    }
}
