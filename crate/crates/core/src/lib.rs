//! Incidence coalgebras of locally finite categories, their bialgebra and
//! weak Hopf upgrades, and exact verifiers for the axioms on finite
//! fragments of several example families.

pub mod bigraph;
pub mod catcore;
pub mod error;
pub mod exactlin;
pub mod forest;
pub mod group;
pub mod incidence;
pub mod monoidal;
pub mod quiver;
pub mod relmonoid;
pub mod report;
pub mod skew;
pub mod twogroup;

pub use error::{Error, Result};
pub use exactlin::{int, rat, FreeVec, FreeVec2, FreeVec3, Pair, Rational, Triple};
