//! Twists of metrically homogeneous graphs of generic type.
//!
//! A twist is a permutation of the distances `1..=δ`. Applied to a graph
//! from the catalog of generic metrically homogeneous graphs, it relabels
//! every distance; the library decides when the result is again such a
//! graph, searches for all twists at small diameters, and checks the
//! finite homogeneous graphs where twists also act.

pub mod classifier;
pub mod cli;
pub mod error;
pub mod finite_graphs;
pub mod parameter_space;
pub mod permutations;
pub mod triangle_catalog;
pub mod twistability;

pub use error::{Error, Result};
pub use parameter_space::{ParameterTuple, K1};
pub use permutations::{GenericKind, Twist};
pub use triangle_catalog::{TriangleSet, Triple};
pub use twistability::{check_twistable, TwistVerdict};
