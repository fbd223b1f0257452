//! Lawson tau-surfaces, their bipolar surfaces and the generalized Lawson
//! family `T_{a,b,c}` of minimal tori and Klein bottles in spheres.
//!
//! - [`elliptic`]: complete elliptic integrals and Jacobi functions, including
//!   negative parameters.
//! - [`surfaces`]: parameter validation and the immersions.
//! - [`diffgeo`]: induced metrics, areas, and a finite-difference minimality test.
//! - [`isometry`]: the change of variables identifying `τ̃_{r,m}` with `T_{a,0,c}`.
//! - [`spectral`]: `Λ` values, lower bounds and the maximality verdict.
//! - [`catalog`], [`mesh`]: file outputs used by the command-line tool.

pub mod catalog;
pub mod diffgeo;
pub mod elliptic;
pub mod error;
pub mod isometry;
pub mod mesh;
pub mod quadrature;
pub mod report;
pub mod spectral;
pub mod surfaces;

pub use error::{Error, Result};
