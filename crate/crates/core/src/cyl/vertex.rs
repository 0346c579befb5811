use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DVector;

use super::function::{CylFun, EdgeLabel};
use super::CylError;
use crate::graph::{EdgeEnd, EmbeddedGraph, HalfEdge};
use crate::linalg::{embed, hermitian_eigen, identity, unflatten_index, zeros, CMatrix};
use crate::su2::{invariant_basis, invariant_generator, Axis, HalfInt, Side};
use crate::C64;

/// The invariant-operator family a half-edge carries at its vertex.
pub fn side_of(he: HalfEdge) -> Side {
    match he.end {
        EdgeEnd::Start => Side::Left,
        EdgeEnd::End => Side::Right,
    }
}

/// Magnetic label a half-edge reads from an edge label.
pub fn slot_label(l: &EdgeLabel, end: EdgeEnd) -> HalfInt {
    match end {
        EdgeEnd::Start => l.n,
        EdgeEnd::End => l.m,
    }
}

fn set_slot(l: &mut EdgeLabel, end: EdgeEnd, m: HalfInt) {
    match end {
        EdgeEnd::Start => l.n = m,
        EdgeEnd::End => l.m = m,
    }
}

/// `(spin, side)` of each half-edge for the given edge spins.
pub fn slot_spins(half_edges: &[HalfEdge], spins: &[HalfInt]) -> Vec<(HalfInt, Side)> {
    half_edges.iter().map(|he| (spins[he.edge], side_of(*he))).collect()
}

/// `Σ_slots Ĵ_i` on the tensor product of the slot spaces.
pub fn total_generator(slots: &[(HalfInt, Side)], axis: Axis) -> CMatrix {
    let dims: Vec<usize> = slots.iter().map(|s| s.0.dim()).collect();
    let n = dims.iter().product();
    let mut t = zeros(n, n);
    for (k, (j, side)) in slots.iter().enumerate() {
        t += embed(&invariant_generator(*j, axis, *side), k, &dims);
    }
    t
}

/// Quadratic Casimir `Σ_i (Σ_slots Ĵ_i)²`.
pub fn total_casimir(slots: &[(HalfInt, Side)]) -> CMatrix {
    let mut c: Option<CMatrix> = None;
    for axis in Axis::ALL {
        let t = total_generator(slots, axis);
        let sq = &t * &t;
        c = Some(match c {
            Some(acc) => acc + sq,
            None => sq,
        });
    }
    c.unwrap_or_else(|| identity(1))
}

/// Applies, to every term of `f`, the operator `op(slot spins)` acting on
/// the magnetic labels read by `half_edges`. `op` returning `None` means
/// zero. Results for equal spins are cached.
pub fn apply_slot_operator(
    f: &CylFun,
    half_edges: &[HalfEdge],
    mut op: impl FnMut(&[(HalfInt, Side)]) -> Option<CMatrix>,
) -> CylFun {
    let mut cache: BTreeMap<Vec<HalfInt>, Option<CMatrix>> = BTreeMap::new();
    let mut out = CylFun::zero(f.graph());
    for (labels, c) in f.terms() {
        let spins: Vec<HalfInt> = half_edges.iter().map(|he| labels[he.edge].j).collect();
        let m = cache.entry(spins.clone()).or_insert_with(|| {
            let slots: Vec<(HalfInt, Side)> = half_edges.iter().zip(&spins).map(|(he, j)| (*j, side_of(*he))).collect();
            op(&slots)
        });
        let Some(m) = m else { continue };
        let dims: Vec<usize> = spins.iter().map(|j| j.dim()).collect();
        let x = half_edges
            .iter()
            .zip(&spins)
            .fold(0, |acc, (he, j)| acc * j.dim() + j.index_of(slot_label(&labels[he.edge], he.end)));
        for y in 0..m.nrows() {
            let v = m[(y, x)];
            if v == C64::new(0.0, 0.0) {
                continue;
            }
            let idx = unflatten_index(y, &dims);
            let mut new_labels = labels.clone();
            for ((he, j), k) in half_edges.iter().zip(&spins).zip(idx) {
                set_slot(&mut new_labels[he.edge], he.end, j.magnetic_at(k));
            }
            out.add_term_unchecked(new_labels, c * v);
        }
    }
    out
}

/// Orthonormal columns spanning the admissible vectors at vertex `v` for
/// the given edge spins.
///
/// Gauge invariant: the intertwiners. Otherwise at a spurious vertex: the
/// complement of the intertwiners, where the vertex Casimir is nonzero.
/// Otherwise: the whole tensor product.
pub fn vertex_space(g: &EmbeddedGraph, v: usize, spins: &[HalfInt], gauge_invariant: bool) -> CMatrix {
    let slots = slot_spins(&g.half_edges_at(v), spins);
    if gauge_invariant {
        return invariant_basis(&slots);
    }
    let dim: usize = slots.iter().map(|s| s.0.dim()).product();
    if g.is_spurious(v) {
        let eig = hermitian_eigen(&total_casimir(&slots));
        let cols: Vec<usize> = (0..dim).filter(|&k| eig.values[k] > 1e-9).collect();
        return CMatrix::from_fn(dim, cols.len(), |r, c| eig.vectors[(r, cols[c])]);
    }
    identity(dim)
}

/// The cylindrical function whose coefficient tensor is the product of the
/// given vectors, one per vertex in the slot order of
/// [`EmbeddedGraph::half_edges_at`].
pub fn vertex_product_function(
    graph: &Arc<EmbeddedGraph>,
    spins: &[HalfInt],
    vectors: &[DVector<C64>],
) -> Result<CylFun, CylError> {
    let ne = graph.num_edges();
    if spins.len() != ne {
        return Err(CylError::LabelCount { expected: ne, got: spins.len() });
    }
    if vectors.len() != graph.num_vertices() {
        return Err(CylError::MissingAssignment { expected: graph.num_vertices(), got: vectors.len() });
    }
    let base: Vec<EdgeLabel> = spins.iter().map(|&j| EdgeLabel { j, m: j, n: j }).collect();
    let mut partial = vec![(base, C64::new(1.0, 0.0))];
    for (v, psi) in vectors.iter().enumerate() {
        let hes = graph.half_edges_at(v);
        let dims: Vec<usize> = hes.iter().map(|he| spins[he.edge].dim()).collect();
        let dim: usize = dims.iter().product();
        if psi.len() != dim {
            return Err(CylError::VertexDimension { vertex: v, expected: dim, got: psi.len() });
        }
        let mut next = Vec::new();
        for (labels, c) in &partial {
            for (x, a) in psi.iter().enumerate() {
                if a.norm() < 1e-15 {
                    continue;
                }
                let mut l = labels.clone();
                for (he, k) in hes.iter().zip(unflatten_index(x, &dims)) {
                    let j = spins[he.edge];
                    set_slot(&mut l[he.edge], he.end, j.magnetic_at(k));
                }
                next.push((l, c * a));
            }
        }
        partial = next;
    }
    let mut f = CylFun::zero(graph);
    for (l, c) in partial {
        f.add_term_unchecked(l, c);
    }
    Ok(f)
}

/// A spin-network state: edge spins, one admissible vertex vector per
/// vertex, and the resulting normalized function.
#[derive(Clone, Debug)]
pub struct SpinNetworkState {
    pub spins: Vec<HalfInt>,
    /// Column of [`vertex_space`] chosen at each vertex.
    pub intertwiners: Vec<usize>,
    pub function: CylFun,
}

/// All states with the given edge spins.
pub fn spin_network_states(
    graph: &Arc<EmbeddedGraph>,
    spins: &[HalfInt],
    gauge_invariant: bool,
) -> Vec<SpinNetworkState> {
    let spaces: Vec<CMatrix> =
        (0..graph.num_vertices()).map(|v| vertex_space(graph, v, spins, gauge_invariant)).collect();
    let counts: Vec<usize> = spaces.iter().map(|s| s.ncols()).collect();
    let total: usize = counts.iter().product();
    let mut out = Vec::with_capacity(total);
    for flat in 0..total {
        let choice = unflatten_index(flat, &counts);
        let vectors: Vec<DVector<C64>> = spaces.iter().zip(&choice).map(|(s, &c)| s.column(c).into_owned()).collect();
        let function = vertex_product_function(graph, spins, &vectors).expect("dimensions match by construction");
        out.push(SpinNetworkState { spins: spins.to_vec(), intertwiners: choice, function });
    }
    out
}

/// Every spin-network state with edge spins in `(0, max_spin]`.
pub fn spin_network_basis(
    graph: &Arc<EmbeddedGraph>,
    max_spin: HalfInt,
    gauge_invariant: bool,
) -> Vec<SpinNetworkState> {
    let ne = graph.num_edges();
    let choices = max_spin.twice().max(0) as usize;
    let mut out = Vec::new();
    if choices == 0 && ne > 0 {
        return out;
    }
    let total = choices.pow(ne as u32);
    for flat in 0..total {
        let spins: Vec<HalfInt> =
            unflatten_index(flat, &vec![choices; ne]).into_iter().map(|k| HalfInt::from_twice(k as i32 + 1)).collect();
        out.extend(spin_network_states(graph, &spins, gauge_invariant));
    }
    out
}
