//! Delone point sets on the real line and finite-scale diagnostics for
//! almost periodicity and equicontinuity of their hulls.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, reports and the
//! command-line front end live in the companion `delone` crate.
//!
//! Layout:
//!
//! - [`geometry`]: points, finite point sets, balls, Hausdorff and patch
//!   distances, separation and gap statistics (dimensions 1 and 2).
//! - [`sources`]: the [`DeloneSource`] abstraction, patches, Delone checks,
//!   local-complexity census and period detection.
//! - [`generators`]: lattices with motifs, cut-and-project Sturmian sets and
//!   sets cut out of a Kronecker flow by a transversal torus curve.
//! - [`almostperiod`]: the local-rubber metric, return vectors, ε-almost
//!   periods, bijection witnesses, Bohr sampling of Dirac-comb convolutions
//!   and the aggregate verdict.
//! - [`dynamics`]: hull samples, proximality probes, separating anchors and
//!   patch-forcing probes.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod almostperiod;
pub mod dynamics;
mod error;
pub mod generators;
pub mod geometry;
mod math;
pub mod sources;

pub use error::{Error, Result};
pub use geometry::{Ball, FinitePointSet, Point};
pub use sources::{DeloneSource, Patch, Translate};

/// Points closer than this are treated as one point.
pub const DUPLICATE_TOL: f64 = 1e-12;

/// Tolerance for deciding that an anchor belongs to a point set.
pub const MEMBERSHIP_TOL: f64 = 1e-9;
