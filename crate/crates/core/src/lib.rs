//! Exact-arithmetic calculators for the cohomology of SL2 in positive
//! characteristic: dimensions of Borel and Weyl-module cohomology, extension
//! spaces between Weyl modules, Specht-module cohomology bounds, and
//! extension spaces between simple modules of the finite groups SL2(p^s).
//!
//! Everything reduces to counting lattice points of small linear systems,
//! and every derived formula ships next to an independent brute-force route
//! plus a `verify` suite that sweeps the two against each other.

pub mod carlson;
pub mod error;
pub mod ext;
pub mod padic;
pub mod partitions;
pub mod report;
pub mod systems;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use report::{Scale, SuiteReport};
