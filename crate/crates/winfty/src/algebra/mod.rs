//! Exact arithmetic: polynomials and rational functions in the parameters
//! h1, h2, a0 (alpha0), N, plus linear solving and sampling certificates.

pub mod hifloat;
pub mod linear;
pub mod param;
pub mod parse;
pub mod poly;
pub mod sample;
pub mod sparse;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

pub use hifloat::{HiComplex, HiFloat};
pub use linear::{solve_linear, AffineSolution, LinearEquation};
pub use param::ParamRational;
pub use poly::{Mono, Poly, Var, NVARS};
pub use sample::{first_mismatch_in_n, interpolate_in_n, poly_identity_in_n};
pub use sparse::{Scalar, SparseOp};

use crate::error::Result;

/// Canonical form (see [`ParamRational::simplify`]).
pub fn simplify(x: &ParamRational) -> Result<ParamRational> {
    x.simplify()
}

/// An assignment of symbols to rational functions of the remaining symbols,
/// applied in symbol order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Specialization {
    pub values: BTreeMap<Var, ParamRational>,
}

impl Specialization {
    pub fn new() -> Self {
        Specialization::default()
    }

    pub fn with(mut self, v: Var, x: ParamRational) -> Self {
        self.values.insert(v, x);
        self
    }

    pub fn with_i64(self, v: Var, x: i64) -> Self {
        self.with(v, ParamRational::from_i64(x))
    }

    /// h1 = 1, h2 = -1 (so h3 = 0): the classical Schur point.
    pub fn schur_point() -> Self {
        Specialization::new().with_i64(Var::H1, 1).with_i64(Var::H2, -1)
    }

    pub fn apply(&self, x: &ParamRational) -> Result<ParamRational> {
        let mut y = x.clone();
        // substitute symbols whose values are free of other substituted
        // symbols last, so chained definitions resolve
        for (v, val) in &self.values {
            y = y.subs(*v, val)?;
        }
        for (v, val) in &self.values {
            if y.uses(*v) {
                y = y.subs(*v, val)?;
            }
        }
        Ok(y)
    }

    /// Full rational point, zero for unassigned symbols.
    pub fn point(&self) -> Option<[BigRational; NVARS]> {
        let mut p: [BigRational; NVARS] = Default::default();
        for v in Var::ALL {
            p[v.index()] = BigRational::zero();
        }
        for (v, val) in &self.values {
            p[v.index()] = val.constant_value()?;
        }
        Some(p)
    }
}
