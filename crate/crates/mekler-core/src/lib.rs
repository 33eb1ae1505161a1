//! Finite Mekler groups and their definable structure.
//!
//! Given a finite *nice* graph `C` and an odd prime `p`, the Mekler group
//! `M(C)` is the group freely generated by the vertices of `C` in the variety
//! of 2-nilpotent groups of exponent `p`, subject only to the relations that
//! two generators commute exactly when they are joined by an edge. This crate
//! constructs `M(C)` with exact normal-form arithmetic and computes the
//! apparatus that makes the graph recoverable from the pure group:
//!
//! * [`graph`] — graph representation, niceness and cover checking,
//!   isomorphism testing, generators for the known nice families;
//! * [`group`] — `M(C)` itself: multiplication, inverses, powers,
//!   commutators, centralizers, full enumeration at desk scale;
//! * [`classify`] — the centralizer (`~`) and power-modulo-centre (`≈`)
//!   equivalences, element types `1^ν / p−1 / p / 1^ι`, handles, the
//!   predicates `A_{n,m}` with their supports, quotient graphs, graph
//!   recovery, type censuses and the inp-pattern check;
//! * [`bilinear`] — alternating bilinear systems over `F_p`, the system
//!   `F(G) = (G/Z, Z, commutator)`, separated bases, the order-`n` sets
//!   `W_n` and the imaginary sorts `B_n`;
//! * [`transversal`] — independence over definable baselines, transversal
//!   computation and unique normal forms relative to a full transversal.
//!
//! Everything is exact arithmetic over `F_p`; every structural shortcut in
//! this crate has a brute-force counterpart in [`oracle`] that the test
//! suites diff against.

pub mod bilinear;
pub mod classify;
pub mod fp;
pub mod graph;
pub mod group;
pub mod linalg;
pub mod oracle;
pub mod transversal;

use serde::{Deserialize, Serialize};

/// Result of a partial function, mirroring the distinguished constant `u`
/// ("undetermined") used for functions whose domain is smaller than their
/// ambient sort.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Partial<T> {
    Defined(T),
    Undetermined,
}

impl<T> Partial<T> {
    pub fn is_defined(&self) -> bool {
        matches!(self, Partial::Defined(_))
    }

    pub fn defined(self) -> Option<T> {
        match self {
            Partial::Defined(t) => Some(t),
            Partial::Undetermined => None,
        }
    }

    /// Unwraps a defined value, panicking on the undetermined marker.
    pub fn expect_defined(self, msg: &str) -> T {
        match self {
            Partial::Defined(t) => t,
            Partial::Undetermined => panic!("{msg}"),
        }
    }
}

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph parse error at line {line}: {message}")]
    GraphParse { line: usize, message: String },

    #[error("graph is not nice: {0:?}")]
    NotNice(graph::NicenessViolation),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("enumeration would visit {required} elements, above the cap of {cap}")]
    CapExceeded { required: u128, cap: u128 },

    #[error("element is not of type p (it is {actual})")]
    NotTypeP { actual: String },

    #[error("invalid vertex subset: {0}")]
    InvalidSubset(String),

    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,

    #[error("input vectors are linearly dependent")]
    DependentInput,

    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("input error: {0}")]
    Input(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
