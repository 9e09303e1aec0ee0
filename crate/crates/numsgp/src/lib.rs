//! Exact arithmetic for numerical semigroups and their relative ideals,
//! classification predicates built on canonical-ideal duality, and an
//! exhaustive enumeration harness that hunts for counterexamples to the
//! structural facts the predicates rely on.
//!
//! The crate is organized as follows:
//!
//! - [`semigroup`]: cofinite additive submonoids of ℕ in a canonical normal
//!   form (minimal generators plus a dense membership window);
//! - [`ideal`]: relative ideals of a fixed base semigroup, with sum,
//!   difference, canonical ideal, normalization and type;
//! - [`classify`](mod@classify): symmetric, almost symmetric, GAS and 2-AGL
//!   predicates, each computed along several independent routes that must agree;
//! - [`endo`]: the endomorphism semigroup `T = M - M` together with
//!   executable checks of the facts relating a semigroup to `T`;
//! - [`enumerate`]: genus-bounded enumeration of all numerical semigroups,
//!   census tables, and the verification harness;
//! - [`twobranch`]: a small exact algebra of cofinite subsets of ℕ² used to
//!   replay a two-branch containment computation.
//!
//! All arithmetic is exact 64-bit integer arithmetic; every value is
//! immutable after construction and safe to share across threads.

use std::fmt;

pub mod classify;
pub mod endo;
pub mod enumerate;
pub mod ideal;
pub mod semigroup;
pub mod twobranch;

pub use classify::{classify, ClassificationReport};
pub use endo::{endo_report, endomorphism_semigroup, EndoReport};
pub use enumerate::{census, enumerate_by_genus, verify, CensusRow, Check, Counterexample};
pub use ideal::RelativeIdeal;
pub use semigroup::NumericalSemigroup;
pub use twobranch::{ConeSet, TwoBranchReport};

/// Errors reported by constructors and fallible operations.
#[derive(Debug)]
pub enum Error {
    /// `from_generators` was called with an empty list.
    EmptyGenerators,
    /// A semigroup generator was zero or negative.
    InvalidGenerator(i64),
    /// The generators have a common divisor, so the complement is infinite.
    GcdNotOne(i64),
    /// An ideal needs at least one generator.
    EmptyIdealGenerators,
    /// Two ideals over different base semigroups were combined.
    BaseMismatch,
    /// A set difference cardinality was requested without containment.
    NotContained,
    /// `rebase` target does not contain the base or does not stabilize the ideal.
    RebaseIncompatible,
    /// The operation is not defined for the full semigroup ℕ.
    FullSemigroup,
    /// Enumeration exceeded the configured node cap.
    NodeCapExceeded(u64),
    /// Text input could not be parsed.
    Parse(String),
    /// A two-branch fixture is missing data or violates a basic invariant.
    Fixture(String),
    /// A cache file failed its version, genus or checksum validation.
    CacheInvalid(String),
    /// Census totals disagree with a previously cached enumeration.
    CensusMismatch(String),
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyGenerators => write!(f, "generator list is empty"),
            Error::InvalidGenerator(g) => write!(f, "generator {} is not a positive integer", g),
            Error::GcdNotOne(g) => write!(f, "generators have gcd {}, complement would be infinite", g),
            Error::EmptyIdealGenerators => write!(f, "ideal generator list is empty"),
            Error::BaseMismatch => write!(f, "ideals have different base semigroups"),
            Error::NotContained => write!(f, "cardinality of a set difference requires containment"),
            Error::RebaseIncompatible => write!(f, "target semigroup does not stabilize the ideal"),
            Error::FullSemigroup => write!(f, "operation is not defined for the full semigroup"),
            Error::NodeCapExceeded(cap) => write!(f, "enumeration exceeded the node cap of {}", cap),
            Error::Parse(msg) => write!(f, "parse error: {}", msg),
            Error::Fixture(msg) => write!(f, "fixture error: {}", msg),
            Error::CacheInvalid(msg) => write!(f, "cache file invalid: {}", msg),
            Error::CensusMismatch(msg) => write!(f, "census mismatch: {}", msg),
            Error::Io(e) => write!(f, "io error: {}", e),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}
