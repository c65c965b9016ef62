//! Partitions, the power-sum ring, Schur functions, the deformed Hall
//! pairing with its adjoint operators, and the (h1, h2) Jack functions.

pub mod inner;
pub mod jack;
pub mod partition;
pub mod powersum;
pub mod schur;
pub mod tables;

pub use inner::{hall_inner, perp, InnerProductSpec};
pub use jack::{jack, jack_gram_schmidt, GrowthPath};
pub use partition::{partitions_of, partitions_up_to, Partition};
pub use powersum::{PowerSumPolynomial, DEFAULT_DEGREE};
pub use schur::{complete_homogeneous, schur};
