use alloc::sync::Arc;
use alloc::vec::Vec;

use super::area::{spin_assignments, spins_label};
use super::spectrum::{merge_values, minkowski_sum};
use super::{OperatorError, Spectrum};
use crate::cyl::{side_of, vertex_space};
use crate::graph::{orientation_factor, EmbeddedGraph, HalfEdge};
use crate::linalg::{embed_product, hermitian_defect, hermitian_eigen, zeros, CMatrix};
use crate::su2::{invariant_generator, levi_civita, Axis, HalfInt, Side};
use crate::C64;

/// `q̂ = Σ_{(a,b,c)} ε(a,b,c) εᵢⱼₖ Ĵᵢ⁽ᵃ⁾ Ĵⱼ⁽ᵇ⁾ Ĵₖ⁽ᶜ⁾` on the tensor product of
/// the slots, summed over ordered triples of distinct slots.
/// `orientation(a, b, c)` is the sign of the tangent determinant.
pub fn volume_vertex_matrix(slots: &[(HalfInt, Side)], orientation: impl Fn(usize, usize, usize) -> i8) -> CMatrix {
    let dims: Vec<usize> = slots.iter().map(|s| s.0.dim()).collect();
    let n: usize = dims.iter().product();
    let mut out = zeros(n, n);
    let gens: Vec<[CMatrix; 3]> =
        slots.iter().map(|&(j, side)| Axis::ALL.map(|axis| invariant_generator(j, axis, side))).collect();
    let k = slots.len();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if a == b || b == c || a == c {
                    continue;
                }
                let eps = orientation(a, b, c);
                if eps == 0 {
                    continue;
                }
                let mut triple = zeros(n, n);
                for i in 0..3 {
                    for j in 0..3 {
                        for l in 0..3 {
                            let e = levi_civita(i, j, l);
                            if e == 0.0 {
                                continue;
                            }
                            let term = embed_product(&[(a, &gens[a][i]), (b, &gens[b][j]), (c, &gens[c][l])], &dims);
                            triple += term * C64::new(e, 0.0);
                        }
                    }
                }
                out += triple * C64::new(f64::from(eps), 0.0);
            }
        }
    }
    out
}

/// `q̂ᵥ` restricted to the admissible vectors at a vertex.
#[derive(Clone, Debug)]
pub struct VolumeVertexOperator {
    pub vertex: usize,
    pub half_edges: Vec<HalfEdge>,
    pub spins: Vec<HalfInt>,
    /// Orthonormal columns spanning the space `matrix` acts on.
    pub basis: CMatrix,
    pub matrix: CMatrix,
}

impl VolumeVertexOperator {
    /// Eigenvalues of `q̂ᵥ`, ascending; `|λ| ≤ 1e-10` is reported as 0.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigen(&self.matrix).values.into_iter().map(|x| if x.abs() <= 1e-10 { 0.0 } else { x }).collect()
    }
}

/// The volume vertex operator at `v` for the given edge spins.
pub fn volume_vertex_operator(
    g: &EmbeddedGraph,
    v: usize,
    spins: &[HalfInt],
    gauge_invariant: bool,
) -> Result<VolumeVertexOperator, OperatorError> {
    if v >= g.num_vertices() {
        return Err(OperatorError::VertexOutOfRange { vertex: v });
    }
    let hes = g.half_edges_at(v);
    let slots: Vec<(HalfInt, Side)> = hes.iter().map(|he| (spins[he.edge], side_of(*he))).collect();
    let mut signs = Vec::new();
    let k = hes.len();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let s =
                    if a == b || b == c || a == c { 0 } else { orientation_factor(g, v, [hes[a], hes[b], hes[c]])? };
                signs.push(s);
            }
        }
    }
    let full = volume_vertex_matrix(&slots, |a, b, c| signs[(a * k + b) * k + c]);
    let basis = vertex_space(g, v, spins, gauge_invariant);
    let matrix = basis.adjoint() * full * &basis;
    let defect = hermitian_defect(&matrix);
    if defect > 1e-12 * matrix.norm().max(1.0) {
        return Err(OperatorError::NotHermitian { defect });
    }
    let matrix = (&matrix + matrix.adjoint()) * C64::new(0.5, 0.0);
    Ok(VolumeVertexOperator { vertex: v, half_edges: hes, spins: spins.to_vec(), basis, matrix })
}

/// Vertices whose volume contributions are summed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    All,
    Vertices(Vec<usize>),
}

impl Region {
    fn contains(&self, v: usize) -> bool {
        match self {
            Region::All => true,
            Region::Vertices(vs) => vs.contains(&v),
        }
    }
}

/// Volume eigenvalues `c Σᵥ √(|λᵥ|/48)`, in units of `(8πγℓ_P²)^{3/2}`,
/// realized by spin networks with every spin in `(0, max_spin]`.
pub fn volume_spectrum(
    graph: &Arc<EmbeddedGraph>,
    region: &Region,
    max_spin: HalfInt,
    c: f64,
    gauge_invariant: bool,
) -> Result<Spectrum, OperatorError> {
    if max_spin.twice() < 1 {
        return Err(OperatorError::InvalidMaxSpin);
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(OperatorError::InvalidConstant);
    }
    if let Region::Vertices(vs) = region {
        if let Some(&v) = vs.iter().find(|&&v| v >= graph.num_vertices()) {
            return Err(OperatorError::VertexOutOfRange { vertex: v });
        }
    }
    let mut records = Vec::new();
    for spins in spin_assignments(graph.num_edges(), max_spin) {
        let mut lists = Vec::new();
        let mut rest = 1;
        let mut empty = false;
        for v in 0..graph.num_vertices() {
            if region.contains(v) {
                let op = volume_vertex_operator(graph, v, &spins, gauge_invariant)?;
                if op.basis.ncols() == 0 {
                    empty = true;
                    break;
                }
                let values = op.eigenvalues().into_iter().map(|l| (c * libm::sqrt(l.abs() / 48.0), 1)).collect();
                lists.push(merge_values(values));
            } else {
                let d = vertex_space(graph, v, &spins, gauge_invariant).ncols();
                if d == 0 {
                    empty = true;
                    break;
                }
                rest *= d;
            }
        }
        if empty {
            continue;
        }
        let label = spins_label(&spins);
        for (value, mult) in minkowski_sum(&lists) {
            records.push((value, mult * rest, label.clone()));
        }
    }
    Ok(Spectrum::from_records(records))
}
