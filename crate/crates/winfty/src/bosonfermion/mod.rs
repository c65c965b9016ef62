//! Boson-fermion correspondence on diagram states: the annihilation
//! Hamiltonians as ad-towers, the sigma maps to symmetric functions, and
//! the 3D fermions and bosons built from the Yangian action.

pub mod diagram;
pub mod operator;
pub mod schur;
pub mod sigma;

pub use diagram::{DiagramFock, ModuleKind};
pub use operator::DiagramOperator;
pub use schur::SchurFock;
pub use sigma::{hamiltonian_h, sigma_jack, sigma_jack_all, sigma_schur, PMonomial, SigmaImage, ThreeDPolynomial};

use crate::algebra::{ParamRational, SparseOp};

/// -(1/(n-1)!) ad_{x}^{n-1} (base) for n = 1..=nmax, index n-1.
pub(crate) fn ad_tower(x: &SparseOp<ParamRational>, base: &SparseOp<ParamRational>, nmax: usize, sign: i64) -> Vec<SparseOp<ParamRational>> {
    let mut out = Vec::with_capacity(nmax);
    let mut t = base.clone();
    let mut fact: i64 = 1;
    for n in 1..=nmax {
        if n > 1 {
            t = x.commutator(&t);
            fact *= n as i64 - 1;
        }
        out.push(t.scale(&ParamRational::frac(sign, fact)));
    }
    out
}
