//! Exact l1-embeddability of graphs.
//!
//! A connected graph is an l1-graph when some integer multiple `t·d` of its
//! path metric is the Hamming metric of a set of binary words. This crate
//! decides that question by exact rational linear programming over the cut
//! cone, and derives the size, scale, rigidity and equicut status of the
//! embedding. It also implements diametral doubling with its block-form
//! realization, and a catalog of named graphs with their expected values.
//!
//! ```
//! use equicut_core::{catalog::families, cutcone, Limits};
//!
//! let c5 = families::cycle(5).unwrap();
//! let cert = cutcone::l1_certificate(&c5, &Limits::default()).unwrap().unwrap();
//! assert_eq!(equicut_core::lp::format_rational(&cert.size), "5/2");
//! assert_eq!(cert.scale, 2);
//! ```

pub mod catalog;
pub mod cutcone;
pub mod doubling;
mod error;
pub mod graph;
pub mod iso;
pub mod lp;
pub mod metric;

pub use cutcone::{
    Cut, CutMode, CutSystem, EmbeddingCertificate, Realization, RealizationReport, SizeBounds,
};
pub use doubling::{AntipodalityReport, DoublingDecomposition, DoublingPreconditions};
pub use error::{Error, Result};
pub use graph::Graph;
pub use lp::{Rational, StandardFormLP};
pub use metric::{DistanceMatrix, MetricSummary};

/// Work limits shared by the solvers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest vertex count for the full cut LP (`2^(v-1) - 1` columns).
    pub cut_limit: usize,
    /// Largest vertex count for equicut-only cut generation.
    pub equicut_limit: usize,
    /// LP relaxations allowed per integer search.
    pub node_budget: u64,
    /// Largest vertex count for isomorphism search.
    pub iso_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cut_limit: 16,
            equicut_limit: 20,
            node_budget: lp::DEFAULT_NODE_BUDGET,
            iso_limit: iso::DEFAULT_ISO_LIMIT,
        }
    }
}
