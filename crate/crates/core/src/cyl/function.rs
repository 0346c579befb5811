use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::CylError;
use crate::graph::{common_refinement, EmbeddedGraph, Orientation, RefinementMap};
use crate::su2::{conjugation_intertwiner, wigner_entry, GroupElement, HalfInt};
use crate::C64;

/// Labels `(j, m, n)` of the factor `√(2j+1) D^{(j)}_{mn}(h_e)` of a basis
/// monomial. `m` is the row index, carried by the end vertex of the edge;
/// `n` is the column index, carried by the start vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeLabel {
    pub j: HalfInt,
    pub m: HalfInt,
    pub n: HalfInt,
}

impl EdgeLabel {
    pub const TRIVIAL: EdgeLabel = EdgeLabel { j: HalfInt::ZERO, m: HalfInt::ZERO, n: HalfInt::ZERO };

    pub fn new(j: HalfInt, m: HalfInt, n: HalfInt) -> Result<Self, CylError> {
        let l = EdgeLabel { j, m, n };
        if l.is_valid() {
            Ok(l)
        } else {
            Err(CylError::InvalidLabel { j, m, n })
        }
    }

    pub fn is_valid(&self) -> bool {
        self.j.is_spin() && self.j.admits(self.m) && self.j.admits(self.n)
    }

    /// Every label of spin `j`, rows outer.
    pub fn all(j: HalfInt) -> impl Iterator<Item = EdgeLabel> {
        j.magnetic().flat_map(move |m| j.magnetic().map(move |n| EdgeLabel { j, m, n }))
    }
}

/// A finite linear combination of normalized basis monomials on a graph.
///
/// The monomial with labels `(jₑ, mₑ, nₑ)` is `Πₑ √(2jₑ+1) D^{(jₑ)}_{mₑnₑ}(hₑ)`;
/// these are orthonormal for the product Haar measure.
#[derive(Clone, Debug)]
pub struct CylFun {
    graph: Arc<EmbeddedGraph>,
    terms: BTreeMap<Vec<EdgeLabel>, C64>,
}

impl CylFun {
    pub fn zero(graph: &Arc<EmbeddedGraph>) -> Self {
        CylFun { graph: graph.clone(), terms: BTreeMap::new() }
    }

    /// The constant function 1 (all spins zero).
    pub fn constant(graph: &Arc<EmbeddedGraph>) -> Self {
        let mut f = Self::zero(graph);
        f.terms.insert(vec![EdgeLabel::TRIVIAL; graph.num_edges()], C64::new(1.0, 0.0));
        f
    }

    pub fn monomial(graph: &Arc<EmbeddedGraph>, labels: Vec<EdgeLabel>) -> Result<Self, CylError> {
        let mut f = Self::zero(graph);
        f.add_term(labels, C64::new(1.0, 0.0))?;
        Ok(f)
    }

    pub fn graph(&self) -> &Arc<EmbeddedGraph> {
        &self.graph
    }

    pub fn terms(&self) -> &BTreeMap<Vec<EdgeLabel>, C64> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c` times the monomial `labels`.
    pub fn add_term(&mut self, labels: Vec<EdgeLabel>, c: C64) -> Result<(), CylError> {
        if labels.len() != self.graph.num_edges() {
            return Err(CylError::LabelCount { expected: self.graph.num_edges(), got: labels.len() });
        }
        if let Some(l) = labels.iter().find(|l| !l.is_valid()) {
            return Err(CylError::InvalidLabel { j: l.j, m: l.m, n: l.n });
        }
        self.add_term_unchecked(labels, c);
        Ok(())
    }

    pub(crate) fn add_term_unchecked(&mut self, labels: Vec<EdgeLabel>, c: C64) {
        *self.terms.entry(labels).or_insert(C64::new(0.0, 0.0)) += c;
    }

    pub fn scale(&self, c: C64) -> CylFun {
        CylFun { graph: self.graph.clone(), terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    /// `self + c·other`, promoting both to a common refinement when their
    /// graphs differ.
    pub fn add_scaled(&self, other: &CylFun, c: C64) -> Result<CylFun, CylError> {
        let (a, b) = if same_graph(&self.graph, &other.graph) {
            (self.clone(), other.clone())
        } else {
            let r = common_refinement(&self.graph, &other.graph)?;
            (promote(self, &r.first)?, promote(other, &r.second)?)
        };
        let mut out = a;
        for (k, v) in b.terms {
            out.add_term_unchecked(k, v * c);
        }
        Ok(out)
    }

    /// Drops coefficients of modulus at most `tol`.
    pub fn pruned(&self, tol: f64) -> CylFun {
        CylFun {
            graph: self.graph.clone(),
            terms: self.terms.iter().filter(|(_, v)| v.norm() > tol).map(|(k, v)| (k.clone(), *v)).collect(),
        }
    }

    /// Largest coefficient modulus.
    pub fn max_coefficient(&self) -> f64 {
        self.terms.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `⟨f, f⟩`.
    pub fn norm_sqr(&self) -> f64 {
        self.terms.values().map(|v| v.norm_sqr()).sum()
    }

    /// Rebinds the function to an equal graph held in a different `Arc`.
    pub fn rebind(&self, graph: &Arc<EmbeddedGraph>) -> Result<CylFun, CylError> {
        if !same_graph(&self.graph, graph) {
            return Err(CylError::GraphMismatch);
        }
        Ok(CylFun { graph: graph.clone(), terms: self.terms.clone() })
    }
}

pub(crate) fn same_graph(a: &Arc<EmbeddedGraph>, b: &Arc<EmbeddedGraph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn sqrt_dim(j: HalfInt) -> f64 {
    libm::sqrt(j.dim() as f64)
}

/// Value of `f` at the holonomies `assignment[e]` of its edges.
pub fn evaluate(f: &CylFun, assignment: &[GroupElement]) -> Result<C64, CylError> {
    if assignment.len() != f.graph.num_edges() {
        return Err(CylError::MissingAssignment { expected: f.graph.num_edges(), got: assignment.len() });
    }
    let mut total = C64::new(0.0, 0.0);
    for (labels, c) in &f.terms {
        let mut v = *c;
        for (l, g) in labels.iter().zip(assignment) {
            if l.j != HalfInt::ZERO {
                v *= wigner_entry(l.j, l.m, l.n, g) * sqrt_dim(l.j);
            }
        }
        total += v;
    }
    Ok(total)
}

/// Haar inner product, conjugate-linear in `f1`.
pub fn inner_product(f1: &CylFun, f2: &CylFun) -> Result<C64, CylError> {
    if same_graph(&f1.graph, &f2.graph) {
        return Ok(same_graph_inner(f1, f2));
    }
    let r = common_refinement(&f1.graph, &f2.graph)?;
    Ok(same_graph_inner(&promote(f1, &r.first)?, &promote(f2, &r.second)?))
}

fn same_graph_inner(f1: &CylFun, f2: &CylFun) -> C64 {
    let (small, large, flip) = if f1.terms.len() <= f2.terms.len() { (f1, f2, false) } else { (f2, f1, true) };
    let mut acc = C64::new(0.0, 0.0);
    for (k, a) in &small.terms {
        if let Some(b) = large.terms.get(k) {
            acc += if flip { b.conj() * a } else { a.conj() * b };
        }
    }
    acc
}

/// One coarse edge factor rewritten over its chain: fine labels with weights.
type Expansion = Vec<(Vec<(usize, EdgeLabel)>, C64)>;

fn expand_edge(chain: &[(usize, Orientation)], l: EdgeLabel) -> Expansion {
    let j = l.j;
    if j == HalfInt::ZERO {
        return vec![(chain.iter().map(|&(id, _)| (id, EdgeLabel::TRIVIAL)).collect(), C64::new(1.0, 0.0))];
    }
    let k = chain.len();
    let d = j.dim();
    let w = conjugation_intertwiner(j);
    // t_x = W_{x,-x}, so conj(D(h))_{ab} = t_a t_b D(h)_{-a,-b}.
    let t: Vec<f64> = (0..d).map(|x| w[(x, d - 1 - x)].re).collect();
    let weight = libm::pow(d as f64, (1.0 - k as f64) / 2.0);
    let mut out = Vec::new();
    // Intermediate indices a_1 … a_{k-1}; a_0 = n, a_k = m.
    let mut idx = vec![0usize; k + 1];
    idx[0] = j.index_of(l.n);
    idx[k] = j.index_of(l.m);
    let inner = d.pow((k - 1) as u32);
    for flat in 0..inner {
        let mut rest = flat;
        for slot in idx.iter_mut().take(k).skip(1) {
            *slot = rest % d;
            rest /= d;
        }
        let mut labels = Vec::with_capacity(k);
        let mut c = C64::new(weight, 0.0);
        for (i, &(id, o)) in chain.iter().enumerate() {
            // Factor D(h_i)_{a_i, a_{i-1}}.
            let (x, y) = (idx[i + 1], idx[i]);
            let label = match o {
                Orientation::Forward => EdgeLabel { j, m: j.magnetic_at(x), n: j.magnetic_at(y) },
                Orientation::Reversed => {
                    // D(h⁻¹)_{xy} = conj(D(h))_{yx} = t_y t_x D(h)_{-y,-x}
                    c *= t[x] * t[y];
                    EdgeLabel { j, m: j.magnetic_at(d - 1 - y), n: j.magnetic_at(d - 1 - x) }
                }
            };
            labels.push((id, label));
        }
        out.push((labels, c));
    }
    out
}

/// Rewrites `f` as a function on the fine graph of `map`, so that its value
/// at fine holonomies equals its value at the composed coarse holonomies.
pub fn promote(f: &CylFun, map: &RefinementMap) -> Result<CylFun, CylError> {
    if !same_graph(&f.graph, &map.coarse) {
        return Err(CylError::MapMismatch);
    }
    if map.is_identity() && Arc::ptr_eq(&map.coarse, &map.fine) {
        return f.rebind(&map.fine);
    }
    let fine_edges = map.fine.num_edges();
    let mut cache: BTreeMap<(usize, EdgeLabel), Expansion> = BTreeMap::new();
    let mut out = CylFun::zero(&map.fine);
    for (labels, c) in &f.terms {
        let mut partial: Vec<(Vec<EdgeLabel>, C64)> = vec![(vec![EdgeLabel::TRIVIAL; fine_edges], *c)];
        for (e, l) in labels.iter().enumerate() {
            let exp = cache.entry((e, *l)).or_insert_with(|| expand_edge(&map.chains[e], *l));
            if exp.len() == 1 && exp[0].1 == C64::new(1.0, 0.0) {
                for (acc, _) in partial.iter_mut() {
                    for &(id, fl) in &exp[0].0 {
                        acc[id] = fl;
                    }
                }
                continue;
            }
            let mut next = Vec::with_capacity(partial.len() * exp.len());
            for (acc, w) in &partial {
                for (fls, v) in exp.iter() {
                    let mut a = acc.clone();
                    for &(id, fl) in fls {
                        a[id] = fl;
                    }
                    next.push((a, w * v));
                }
            }
            partial = next;
        }
        for (a, w) in partial {
            out.add_term_unchecked(a, w);
        }
    }
    Ok(out)
}

/// Every normalized monomial with spins at most `max_spin` (including 0).
pub fn monomial_basis(graph: &Arc<EmbeddedGraph>, max_spin: HalfInt) -> Vec<CylFun> {
    let per_edge: Vec<EdgeLabel> =
        (0..=max_spin.twice()).flat_map(|t| EdgeLabel::all(HalfInt::from_twice(t))).collect();
    let n = graph.num_edges();
    let total = per_edge.len().pow(n as u32);
    (0..total)
        .map(|mut flat| {
            let mut labels = vec![EdgeLabel::TRIVIAL; n];
            for slot in labels.iter_mut().rev() {
                *slot = per_edge[flat % per_edge.len()];
                flat /= per_edge.len();
            }
            let mut f = CylFun::zero(graph);
            f.add_term_unchecked(labels, C64::new(1.0, 0.0));
            f
        })
        .collect()
}

/// Acts with a gauge transformation given by its values at the vertices:
/// `(g▷f)(h) = f(hₑ ↦ g(end) hₑ g(start)⁻¹)`.
pub fn gauge_transform(f: &CylFun, at_vertices: &[GroupElement]) -> Result<CylFun, CylError> {
    let g = &f.graph;
    if at_vertices.len() != g.num_vertices() {
        return Err(CylError::MissingAssignment { expected: g.num_vertices(), got: at_vertices.len() });
    }
    let mut out = CylFun::zero(g);
    for (labels, c) in &f.terms {
        let mut partial: Vec<(Vec<EdgeLabel>, C64)> = vec![(Vec::with_capacity(labels.len()), *c)];
        for (e, l) in labels.iter().enumerate() {
            let edge = g.edge(e);
            let (ge, gs) = (&at_vertices[edge.end], at_vertices[edge.start].inverse());
            let mut next = Vec::new();
            for (acc, w) in &partial {
                // D(g_e h g_s⁻¹)_{mn} = Σ D(g_e)_{m m'} D(h)_{m'n'} D(g_s⁻¹)_{n'n}
                for m2 in l.j.magnetic() {
                    let a = wigner_entry(l.j, l.m, m2, ge);
                    for n2 in l.j.magnetic() {
                        let b = wigner_entry(l.j, n2, l.n, &gs);
                        let v = a * b;
                        if v.norm() < 1e-300 {
                            continue;
                        }
                        let mut next_labels = acc.clone();
                        next_labels.push(EdgeLabel { j: l.j, m: m2, n: n2 });
                        next.push((next_labels, w * v));
                    }
                }
            }
            partial = next;
        }
        for (a, w) in partial {
            out.add_term_unchecked(a, w);
        }
    }
    Ok(out)
}

/// `‖f1 - f2‖`, on a common refinement when the graphs differ.
pub fn distance(f1: &CylFun, f2: &CylFun) -> Result<f64, CylError> {
    Ok(libm::sqrt(f1.add_scaled(f2, C64::new(-1.0, 0.0))?.norm_sqr()))
}
