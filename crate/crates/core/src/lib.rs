//! Verification toolkit for error detection in hypergraph-state quantum codes.
//!
//! The crate decides the linear detection condition for an error
//! configuration over a cyclic group `Z_d` ([`detection`]), checks the same
//! question by brute force on the explicit encoding isometry ([`statesim`]),
//! and compares the two-qubit gate cost of a hypergraph code with its
//! clique-expanded graph-state counterpart ([`gatecost`]).

pub mod cli;
pub mod detection;
mod error;
pub mod fixture;
pub mod gatecost;
pub mod group;
pub mod hypergraph;
pub mod linalg;
pub mod statesim;

pub use detection::{
    build_detection_system, build_homomorphism, detection_radius, enumerate_detected,
    is_detected, kernel_mod_d, DetectionVerdict, EnumerationReport, KernelBasis, LinearSystem,
};
pub use error::{Error, Result};
pub use gatecost::{clique_cost, compare, hyper_cost, CostReport};
pub use group::{bicharacter, check_nondegeneracy, GroupElement, GroupTuple, Modulus};
pub use hypergraph::{ErrorConfiguration, Hypergraph, VertexId};
pub use statesim::{
    apply_ckz, encode, hypergraph_state, isometry_matrix, kl_factorization_check,
    verify_stabilizer, FactorizationReport, IsometryMatrix, StateVector,
};
