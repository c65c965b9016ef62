//! Free-field realization of W(1+infinity): currents J_1..J_N, Wick OPEs,
//! the Miura fields U_k and V_1..V_4, mode commutators and structure
//! constants.

pub mod coeff;
pub mod field;
pub mod ope;

pub use coeff::Coeff;
pub use field::{CompositeField, Factor, Monomial};
pub use ope::{nested_product, regular_product, wick_ope, OpeResult};
pub mod miura;
pub use miura::{a_solution_printed, miura_u, v_field, MiuraFields, VFields, ANSATZ_LABELS};
pub mod expr;
pub use expr::{AlphaChoice, FieldContext, Regime};
pub mod catalog;
pub use catalog::{catalog, verify_catalog, verify_spec, verify_spec_at, OpeCheck, OpeSpec, Workspace};
pub mod forms;
pub use forms::{field_forms, verify_form, FieldForm, FormCheck};
pub mod asystem;
pub use asystem::{derive_a_system, ASystemReport, RowCheck};
pub mod wstructure;
pub use wstructure::{structure_constant, verify_w_structure, w_commutator, w_structure, WStructureReport, WTerm};
pub mod modes;
pub use modes::{modes_from_ope, v_commutator, verify_commutators, CommutatorCheck, ModeCommutator, ModeTarget};
pub mod fockcheck;
pub use fockcheck::{fock_cross_check, FockReport, FockSpace, FockState};
