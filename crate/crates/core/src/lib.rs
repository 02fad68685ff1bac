//! Exact spanning-tree and two-forest counts, effective resistances,
//! potential kernels, and curvature invariants of finite multigraphs.
//!
//! All quantities are computed in exact rational arithmetic, so every
//! identity check in this crate is a decidable equality rather than a
//! tolerance comparison.

pub mod error;
pub mod families;
pub mod forest;
pub mod generate;
pub mod graph;
pub mod invariants;
pub mod linalg;
pub mod potential;
pub mod report;
pub mod sampling;

pub use error::{Error, Result};
pub use families::{Family, FamilySpec};
pub use forest::Forest;
pub use graph::{parse_graph, Edge, Graph};
pub use linalg::{IntMatrix, Matrix, RationalMatrix};
pub use report::{Check, Relation, Value, VerificationReport};
