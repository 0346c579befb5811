use crate::cyl::{apply_slot_operator, side_of, total_casimir, total_generator, CylFun};
use crate::graph::{EdgeEnd, EmbeddedGraph, GraphError, HalfEdge};
use crate::linalg::CMatrix;
use crate::su2::{invariant_generator, Axis, HalfInt};

/// `Ĵᵢ^{(v,e)}`: the generator along `axis` on the label that the half-edge
/// `(e, end)` carries at its vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeVertexOperator {
    pub vertex: usize,
    pub half_edge: HalfEdge,
    pub axis: Axis,
}

impl EdgeVertexOperator {
    pub fn new(g: &EmbeddedGraph, vertex: usize, half_edge: HalfEdge, axis: Axis) -> Result<Self, GraphError> {
        if half_edge.edge >= g.num_edges() {
            return Err(GraphError::EdgeOutOfRange { edge: half_edge.edge });
        }
        if g.vertex_of(half_edge) != vertex {
            return Err(GraphError::NotIncident { vertex, edge: half_edge.edge });
        }
        Ok(EdgeVertexOperator { vertex, half_edge, axis })
    }

    /// The matrix on the spin-`j` label.
    pub fn matrix(&self, j: HalfInt) -> CMatrix {
        invariant_generator(j, self.axis, side_of(self.half_edge))
    }

    pub fn apply(&self, f: &CylFun) -> CylFun {
        apply_slot_operator(f, &[self.half_edge], |slots| Some(self.matrix(slots[0].0)))
    }
}

/// `Ĵₑ²`, with eigenvalue `jₑ(jₑ+1)` on every monomial.
pub fn edge_casimir_apply(f: &CylFun, edge: usize) -> CylFun {
    let he = HalfEdge { edge, end: EdgeEnd::Start };
    apply_slot_operator(f, &[he], |slots| Some(total_casimir(slots)))
}

/// `Ĵᵢᵛ = Σ_{e at v} Ĵᵢ^{(v,e)}`.
pub fn vertex_generator_apply(f: &CylFun, v: usize, axis: Axis) -> CylFun {
    let hes = f.graph().half_edges_at(v);
    if hes.is_empty() {
        return CylFun::zero(f.graph());
    }
    apply_slot_operator(f, &hes, |slots| Some(total_generator(slots, axis)))
}

/// `Ĵᵥ² = Σᵢ (Ĵᵢᵛ)²`.
pub fn vertex_casimir_apply(f: &CylFun, v: usize) -> CylFun {
    let hes = f.graph().half_edges_at(v);
    if hes.is_empty() {
        return CylFun::zero(f.graph());
    }
    apply_slot_operator(f, &hes, |slots| Some(total_casimir(slots)))
}
