//! Exact computer algebra for the affine Yangian of gl(1) acting on plane
//! partitions, the boson-fermion maps producing Schur and Jack symmetric
//! functions, free-field W(1+infinity) currents and their OPEs, and the KP
//! hierarchy with its Hirota and Pluecker identities.
//!
//! All coefficients live in [`algebra::ParamRational`], the field of
//! rational functions in h1, h2 (with h3 = -h1-h2), alpha0 and N.

pub mod algebra;
pub mod bosonfermion;
pub mod error;
pub mod fock;
pub mod kp;
pub mod report;
pub mod suites;
pub mod symfun;
pub mod vertex;
pub mod yangian;

pub use algebra::{ParamRational, Var};
pub use error::{Error, Result};
