//! Combinatorial curve complexes of surfaces.
//!
//! Surfaces are triangulated (`surface`), simple closed curves are normal
//! curves (`curve`), intersection numbers and Dehn twists are exact
//! (`intersection`), and the remaining modules build finite slices of the
//! curve complex and check maps between them.

pub mod cache;
pub mod complexes;
pub mod curve;
pub mod cut;
pub mod error;
pub mod homology;
pub mod hyperbolic;
pub mod harness;
pub mod intersection;
pub mod mcg;
pub mod predicates;
pub mod suites;
pub mod surface;
pub mod word;

pub use error::{Error, Result};
