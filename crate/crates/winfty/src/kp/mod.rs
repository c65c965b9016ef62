//! The KP hierarchy from the W(1+infinity) fields: cylinder mode tables,
//! Poisson brackets, the Lax operator and its Hamiltonians, evolution
//! equations, elimination to the KP equation, and the bilinear forms with
//! their tau functions.

pub mod bracket;
pub mod diffpoly;
pub mod psdo;

pub use bracket::{printed_brackets, printed_mode_table, Bracket, BracketTable, ModeSource, ModeTable, Variant, BRACKET_PAIRS};
pub use diffpoly::{DiffPoly, Dir, Jet};
pub use psdo::PseudoDiffOp;
pub mod hierarchy;
pub use hierarchy::{eliminate, hamiltonian, kp_flows, printed_elimination, printed_flows, printed_hamiltonian, printed_kp, Elimination, Evolution, Rescaling};
pub mod tau;
pub use tau::{log_tau_certificate, plucker_tau, random_tau_checks, BilinearOp, TauCheck, TauPolynomial};
