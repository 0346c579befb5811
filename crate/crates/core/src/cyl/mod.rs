//! Cylindrical functions of SU(2) connections.
//!
//! A function on a graph depends on a connection only through the edge
//! holonomies. Functions are expanded in the Peter–Weyl monomials, which
//! carry a factor `√(2j+1)` per edge so that they are orthonormal for the
//! product Haar measure.

mod function;
mod holonomy;
mod montecarlo;
mod vertex;

pub use function::{distance, evaluate, gauge_transform, inner_product, monomial_basis, promote, CylFun, EdgeLabel};
pub use holonomy::{
    constant_along, gauge_transform_holonomy, gauge_transformed, holonomy, wilson_loop, Connection,
    GaugeTransformation, Smoothness, MAX_STEPS,
};
pub use montecarlo::{mc_inner_product, McEstimate};
pub use vertex::{
    apply_slot_operator, side_of, slot_label, slot_spins, spin_network_basis, spin_network_states, total_casimir,
    total_generator, vertex_product_function, vertex_space, SpinNetworkState,
};

use crate::graph::GraphError;
use crate::su2::HalfInt;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum CylError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("functions live on different graphs")]
    GraphMismatch,
    #[error("refinement map does not start at the function's graph")]
    MapMismatch,
    #[error("expected {expected} group elements, got {got}")]
    MissingAssignment { expected: usize, got: usize },
    #[error("expected {expected} edge labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("invalid edge label j={j} m={m} n={n}")]
    InvalidLabel { j: HalfInt, m: HalfInt, n: HalfInt },
    #[error("vertex {vertex}: expected a vector of length {expected}, got {got}")]
    VertexDimension { vertex: usize, expected: usize, got: usize },
    #[error("path has fewer than two distinct points")]
    DegeneratePath,
    #[error("path-ordered exponential did not converge within {steps} steps")]
    HolonomyNotConverged { steps: usize },
    #[error("polyline is not closed")]
    NotClosed,
    #[error("sample count must be positive")]
    NoSamples,
}
