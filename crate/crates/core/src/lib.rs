//! Matroids represented by their lattices of cyclic flats and the ranks of
//! those flats.
//!
//! The crate validates ranked families against the cyclic-flat axioms,
//! derives rank, independence, circuits and closure from them, and builds
//! minors, duals, direct sums and free products directly on the
//! representation. Brute-force subset enumeration is available throughout as
//! an independent cross-check.

pub mod constructions;
pub mod error;
pub mod format;
pub mod freeprod;
pub mod matroid;
pub mod minors;
pub mod nested;
pub mod poset;
pub mod random;
pub mod subset;
pub mod transversal;
pub mod tutte;

pub use error::{Error, Result};
pub use matroid::{validate, AxiomViolation, Matroid, RankedFamily};
pub use minors::MinorSpec;
pub use poset::FiniteLattice;
pub use subset::{GroundSet, SetFamily, Subset};
