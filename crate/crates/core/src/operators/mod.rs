//! Flux, area and volume operators on cylindrical functions.
//!
//! Generators are the Hermitian `Ĵᵢ` of [`crate::su2::invariant_generator`]
//! acting on the label read by a half-edge: left-invariant at the start of
//! an edge, right-invariant at its end.

mod area;
mod edge;
mod flux;
mod spectrum;
mod volume;

pub use area::{
    area_apply, area_eigenvalue, area_formula_spectrum, area_matrix, area_spectrum, area_vertex_matrix,
    area_vertex_operator, fine_vertex_space, AreaVertexOperator,
};
pub use edge::{edge_casimir_apply, vertex_casimir_apply, vertex_generator_apply, EdgeVertexOperator};
pub use flux::{flux_apply, flux_commutator, flux_commutator_closed_form, flux_matrix, operator_matrix, FluxSpec};
pub use spectrum::{Spectrum, SpectrumEntry};
pub use volume::{volume_spectrum, volume_vertex_matrix, volume_vertex_operator, Region, VolumeVertexOperator};

use crate::cyl::CylError;
use crate::graph::GraphError;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum OperatorError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cyl(#[from] CylError),
    #[error("basis is not orthonormal (Gram defect {defect:e})")]
    NotOrthonormal { defect: f64 },
    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("maximal spin must be at least 1/2")]
    InvalidMaxSpin,
    #[error("volume constant must be positive")]
    InvalidConstant,
    #[error("vertex {vertex} out of range")]
    VertexOutOfRange { vertex: usize },
}
