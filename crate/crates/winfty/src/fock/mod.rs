//! Combinatorial bases: Maya diagrams with their fermion and gamma
//! actions, and plane partitions with box weights.

pub mod fermion;
pub mod gamma;
pub mod maya;
pub mod plane;

pub use fermion::{Fermion, FermionState};
pub use gamma::{gamma_action, gamma_fermionic, GAMMA_SIGN};
pub use maya::MayaDiagram;
pub use plane::{plane_partitions_of, plane_partitions_up_to, weight_from_ij, Box3, PlanePartition};
