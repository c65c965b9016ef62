//! The affine Yangian of gl(1) on plane partitions: spectral functions
//! psi_pi(u), residue coefficients, generator matrices in several gauges
//! and a checker for the defining relations.

pub mod check;
pub mod module;
pub mod spectral;
pub mod truncation;

pub use check::{check_relation_exact, check_relation_numeric, Relation, RelationReport};
pub use module::{ef_product, psi_pi, Edge, Gauge, YangianModule, YangianParams};
pub use spectral::SpectralRational;
pub use truncation::{one_layer_truncation, TruncationReport};
