use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

use super::flux::{operator_matrix, sum_on_graph};
use super::spectrum::{merge_values, minkowski_sum};
use super::{OperatorError, Spectrum};
use crate::cyl::{apply_slot_operator, vertex_space, CylFun};
use crate::graph::{punctures, EdgeEnd, EmbeddedGraph, HalfEdge, Orientation, Puncture, RefinementMap, Surface};
use crate::linalg::{embed, hermitian_defect, hermitian_eigen, spectral_map, unflatten_index, zeros, CMatrix};
use crate::su2::{casimir_eigenvalue, invariant_generator, Axis, HalfInt, Side};
use crate::C64;

/// `2j_u(j_u+1) + 2j_d(j_d+1) − j_{u+d}(j_{u+d}+1)`.
pub fn area_eigenvalue(j_up: HalfInt, j_down: HalfInt, j_total: HalfInt) -> Ratio<i64> {
    casimir_eigenvalue(j_up) * 2 + casimir_eigenvalue(j_down) * 2 - casimir_eigenvalue(j_total)
}

/// Multiplicity of each total spin in the tensor product of `spins`.
fn total_spin_content(spins: &[HalfInt]) -> BTreeMap<HalfInt, usize> {
    let mut acc = BTreeMap::from([(HalfInt::ZERO, 1usize)]);
    for &s in spins {
        let mut next = BTreeMap::new();
        for (&j, &m) in &acc {
            for t in j.coupled(s) {
                *next.entry(t).or_insert(0) += m;
            }
        }
        acc = next;
    }
    acc
}

/// Exact eigenvalues of `(Ĵ⁽ᵘ⁾ − Ĵ⁽ᵈ⁾)²` on the tensor product of the up
/// and down slots, with multiplicities, from angular-momentum coupling.
pub fn area_formula_spectrum(up: &[HalfInt], down: &[HalfInt]) -> Vec<(Ratio<i64>, usize)> {
    let mut out: BTreeMap<Ratio<i64>, usize> = BTreeMap::new();
    for (&ju, &mu) in &total_spin_content(up) {
        for (&jd, &md) in &total_spin_content(down) {
            for jt in ju.coupled(jd) {
                *out.entry(area_eigenvalue(ju, jd, jt)).or_insert(0) += mu * md * jt.dim();
            }
        }
    }
    out.into_iter().collect()
}

/// `Σᵢ (Σ_s κ_s Ĵᵢ⁽ˢ⁾)²` on the tensor product of the slots `(j, side, κ)`.
/// Tangent slots (`κ = 0`) act trivially.
pub fn area_vertex_matrix(slots: &[(HalfInt, Side, i8)]) -> CMatrix {
    let dims: Vec<usize> = slots.iter().map(|s| s.0.dim()).collect();
    let n = dims.iter().product();
    let mut out = zeros(n, n);
    for axis in Axis::ALL {
        let mut t = zeros(n, n);
        for (k, &(j, side, kappa)) in slots.iter().enumerate() {
            if kappa != 0 {
                t += embed(&invariant_generator(j, axis, side), k, &dims) * C64::new(f64::from(kappa), 0.0);
            }
        }
        out += &t * &t;
    }
    out
}

/// `−Δ_{S,v}` at one puncture.
#[derive(Clone, Debug)]
pub struct AreaVertexOperator {
    pub vertex: usize,
    pub up: Vec<HalfEdge>,
    pub down: Vec<HalfEdge>,
    /// On the tensor product of every slot at the vertex, in
    /// [`EmbeddedGraph::half_edges_at`] order.
    pub matrix: CMatrix,
}

/// The area vertex operator at a puncture, for the given spins of the
/// punctured graph's edges.
pub fn area_vertex_operator(p: &Puncture, spins: &[HalfInt]) -> AreaVertexOperator {
    let mut up = Vec::new();
    let mut down = Vec::new();
    let slots: Vec<(HalfInt, Side, i8)> = p
        .half_edges
        .iter()
        .map(|h| {
            let he = h.half_edge();
            match h.kappa {
                1 => up.push(he),
                -1 => down.push(he),
                _ => {}
            }
            (spins[h.edge], crate::cyl::side_of(he), h.kappa)
        })
        .collect();
    AreaVertexOperator { vertex: p.vertex, up, down, matrix: area_vertex_matrix(&slots) }
}

/// Rounds to the nearest quarter when within `1e-8`; area vertex operators
/// have spectra in `¼ℤ`.
fn snap_quarter(x: f64) -> f64 {
    let q = libm::round(4.0 * x) / 4.0;
    let x = if (x - q).abs() < 1e-8 { q } else { x };
    x.max(0.0)
}

fn sqrt_delta(m: &CMatrix) -> CMatrix {
    spectral_map(m, |x| libm::sqrt(snap_quarter(x)))
}

/// Admissible vectors at a vertex of a puncture subdivision, with rows in
/// the slot order of the fine graph. `spins` are the coarse edge spins;
/// the map's chains must be forward, as produced by
/// [`crate::graph::punctures`].
pub fn fine_vertex_space(map: &RefinementMap, v: usize, spins: &[HalfInt], gauge_invariant: bool) -> CMatrix {
    let (coarse, fine) = (&map.coarse, &map.fine);
    let fine_spins = fine_spins(map, spins);
    let fine_hes = fine.half_edges_at(v);
    let fine_dims: Vec<usize> = fine_hes.iter().map(|he| fine_spins[he.edge].dim()).collect();
    let n: usize = fine_dims.iter().product();
    if v >= coarse.num_vertices() {
        // interior subdivision point: the pieces are glued by the identity
        let d = fine_dims[0];
        let mut col = zeros(n, 1);
        for k in 0..d {
            col[(k * d + k, 0)] = C64::new(1.0 / libm::sqrt(d as f64), 0.0);
        }
        return col;
    }
    let coarse_hes = coarse.half_edges_at(v);
    let space = vertex_space(coarse, v, spins, gauge_invariant);
    let pos: Vec<usize> = coarse_hes
        .iter()
        .map(|he| {
            let chain = &map.chains[he.edge];
            let (id, o) = match he.end {
                EdgeEnd::Start => chain[0],
                EdgeEnd::End => chain[chain.len() - 1],
            };
            assert_eq!(o, Orientation::Forward, "puncture subdivisions keep orientations");
            let image = HalfEdge { edge: id, end: he.end };
            fine_hes.iter().position(|x| *x == image).expect("coarse half-edge survives subdivision")
        })
        .collect();
    let coarse_dims: Vec<usize> = coarse_hes.iter().map(|he| spins[he.edge].dim()).collect();
    let mut out = zeros(n, space.ncols());
    for x in 0..space.nrows() {
        let idx = unflatten_index(x, &coarse_dims);
        let mut fine_idx = vec![0; fine_dims.len()];
        for (k, &i) in idx.iter().enumerate() {
            fine_idx[pos[k]] = i;
        }
        let y = crate::linalg::flatten_index(&fine_idx, &fine_dims);
        for c in 0..space.ncols() {
            out[(y, c)] = space[(x, c)];
        }
    }
    out
}

fn fine_spins(map: &RefinementMap, spins: &[HalfInt]) -> Vec<HalfInt> {
    let mut out = vec![HalfInt::ZERO; map.fine.num_edges()];
    for (e, chain) in map.chains.iter().enumerate() {
        for &(id, _) in chain {
            out[id] = spins[e];
        }
    }
    out
}

pub(crate) fn spins_label(spins: &[HalfInt]) -> String {
    let parts: Vec<String> = spins.iter().map(|j| format!("{j}")).collect();
    format!("j=({})", parts.join(" "))
}

pub(crate) fn spin_assignments(edges: usize, max_spin: HalfInt) -> impl Iterator<Item = Vec<HalfInt>> {
    let choices = max_spin.twice().max(0) as usize;
    let total = if edges == 0 { 1 } else { choices.pow(edges as u32) };
    (0..total).map(move |flat| {
        unflatten_index(flat, &vec![choices; edges]).into_iter().map(|k| HalfInt::from_twice(k as i32 + 1)).collect()
    })
}

/// Area eigenvalues, in units of `4πγℓ_P²`, realized by spin networks on
/// `graph` with every spin in `(0, max_spin]`.
///
/// For each spin assignment the operator at each puncture is diagonalized
/// on the admissible vertex vectors; eigenvalues at distinct punctures
/// add.
pub fn area_spectrum(
    graph: &Arc<EmbeddedGraph>,
    surface: &Surface,
    max_spin: HalfInt,
    gauge_invariant: bool,
) -> Result<Spectrum, OperatorError> {
    if max_spin.twice() < 1 {
        return Err(OperatorError::InvalidMaxSpin);
    }
    let pun = punctures(graph, surface)?;
    let mut records = Vec::new();
    for spins in spin_assignments(graph.num_edges(), max_spin) {
        let dims: Vec<usize> =
            (0..graph.num_vertices()).map(|v| vertex_space(graph, v, &spins, gauge_invariant).ncols()).collect();
        if dims.contains(&0) {
            continue;
        }
        let fs = fine_spins(&pun.refinement, &spins);
        let mut rest = 1;
        for (v, d) in dims.iter().enumerate() {
            if !pun.punctures.iter().any(|p| p.vertex == v) {
                rest *= d;
            }
        }
        let mut lists = Vec::with_capacity(pun.punctures.len());
        for p in &pun.punctures {
            let space = fine_vertex_space(&pun.refinement, p.vertex, &spins, gauge_invariant);
            let op = area_vertex_operator(p, &fs);
            let m = space.adjoint() * &op.matrix * &space;
            let values = hermitian_eigen(&m).values.into_iter().map(|x| (libm::sqrt(snap_quarter(x)), 1)).collect();
            lists.push(merge_values(values));
        }
        let label = spins_label(&spins);
        for (value, mult) in minkowski_sum(&lists) {
            records.push((value, mult * rest, label.clone()));
        }
    }
    Ok(Spectrum::from_records(records))
}

/// `Σ_p √(−Δ_{S,p}) Ψ` in units of `4πγℓ_P²`, on the graph of `Ψ`
/// subdivided at the punctures of `S`.
pub fn area_apply(surface: &Surface, psi: &CylFun) -> Result<CylFun, OperatorError> {
    let pun = punctures(psi.graph(), surface)?;
    let fine = crate::cyl::promote(psi, &pun.refinement)?;
    let mut parts = Vec::new();
    for p in &pun.punctures {
        if p.half_edges.iter().all(|h| h.kappa == 0) {
            continue;
        }
        let hes: Vec<HalfEdge> = p.half_edges.iter().map(|h| h.half_edge()).collect();
        let kappas: Vec<i8> = p.half_edges.iter().map(|h| h.kappa).collect();
        parts.push(apply_slot_operator(&fine, &hes, |slots| {
            let s: Vec<(HalfInt, Side, i8)> = slots.iter().zip(&kappas).map(|(&(j, side), &k)| (j, side, k)).collect();
            Some(sqrt_delta(&area_vertex_matrix(&s)))
        }));
    }
    sum_on_graph(parts, &pun.graph)
}

/// Matrix of [`area_apply`] in an orthonormal basis, checked Hermitian to
/// `1e-12`.
pub fn area_matrix(surface: &Surface, basis: &[CylFun]) -> Result<CMatrix, OperatorError> {
    let m = operator_matrix(basis, |b| area_apply(surface, b))?;
    let defect = hermitian_defect(&m);
    if defect > 1e-12 {
        return Err(OperatorError::NotHermitian { defect });
    }
    Ok((&m + m.adjoint()) * C64::new(0.5, 0.0))
}
