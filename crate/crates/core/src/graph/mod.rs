//! Graphs embedded in a chart of ℝ³, planar surfaces, and how they meet.
//!
//! Edges are polylines. Two edges may only touch at shared endpoint
//! vertices; every geometric coincidence test uses the absolute tolerance
//! [`TOL`].

mod embedded;
mod geometry;
mod refine;
mod surface;

pub use embedded::{validate, Edge, EdgeEnd, EmbeddedGraph, HalfEdge};
pub use geometry::{segment_contact, Contact, Point, TOL};
pub use refine::{common_refinement, same_up_to_relabeling, subdivide, CommonRefinement, Orientation, RefinementMap};
pub use surface::{
    kappa, orientation_factor, punctures, Containment, Direction, Puncture, PunctureHalfEdge, Punctured, Surface,
};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("edge {edge} refers to missing vertex {vertex}")]
    VertexOutOfRange { edge: usize, vertex: usize },
    #[error("no edge with id {edge}")]
    EdgeOutOfRange { edge: usize },
    #[error("edge {edge}: polyline ends do not match its vertices")]
    EndpointMismatch { edge: usize },
    #[error("edge {edge}: too few polyline points")]
    DegenerateEdge { edge: usize },
    #[error("edge {edge}: segment {segment} has zero length")]
    DegenerateSegment { edge: usize, segment: usize },
    #[error("edges {first} and {second} meet away from a shared endpoint at {point:?}")]
    EdgeContact { first: usize, second: usize, point: [f64; 3] },
    #[error("vertex {vertex} lies on the interior of edge {edge} at {point:?}")]
    VertexOnEdge { vertex: usize, edge: usize, point: [f64; 3] },
    #[error("point {point:?} is not on edge {edge}")]
    PointNotOnEdge { edge: usize, point: [f64; 3] },
    #[error("point {point:?} is an endpoint of edge {edge}")]
    PointAtEndpoint { edge: usize, point: [f64; 3] },
    #[error("edges {first} and {second} of the union overlap without coinciding, near {point:?}")]
    NonConformingOverlap { first: usize, second: usize, point: [f64; 3] },
    #[error("refinement chain of edge {edge} does not trace it")]
    RefinementMismatch { edge: usize },
    #[error("edge {edge} meets the surface within tolerance of its boundary at {point:?}")]
    BoundaryGrazing { edge: usize, point: [f64; 3] },
    #[error("edge {edge} is not incident to vertex {vertex}")]
    NotIncident { vertex: usize, edge: usize },
    #[error("degenerate surface: {reason}")]
    DegenerateSurface { reason: &'static str },
}
