//! Exact Hilbert functions, multiplication-map ranks and minimal free
//! resolutions for fat point schemes supported at up to eight general
//! points of the projective plane.
//!
//! Everything is computed on the blow-up of the plane at the points, in its
//! rank-9 divisor class lattice. [`oracle`] is an independent brute-force
//! check over a prime field.

pub mod cohomology;
pub mod error;
pub mod lattice;
pub mod mu;
pub mod oracle;
pub mod parse;
pub mod resolution;

pub use error::{Error, Result};
pub use lattice::{CurveClass, CurveKind, DivisorClass, Triple};
pub use mu::{mu_rank, MuRankReport};
pub use resolution::{resolution, FatPointScheme, GradedResolution};
