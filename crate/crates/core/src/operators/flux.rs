use alloc::sync::Arc;
use alloc::vec::Vec;

use super::OperatorError;
use crate::cyl::{apply_slot_operator, inner_product, promote, CylFun};
use crate::graph::{punctures, Point, Puncture, Surface};
use crate::linalg::{embed, hermitian_defect, zeros, CMatrix};
use crate::su2::{smeared_generator, LieVector};
use crate::C64;

type Smearing = dyn Fn(&Point) -> LieVector + Send + Sync;

/// A surface with an su(2)-valued smearing function `fⁱ`.
#[derive(Clone)]
pub struct FluxSpec {
    pub surface: Surface,
    smearing: Arc<Smearing>,
}

impl core::fmt::Debug for FluxSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FluxSpec").field("surface", &self.surface).finish_non_exhaustive()
    }
}

impl FluxSpec {
    pub fn new(surface: Surface, smearing: impl Fn(&Point) -> LieVector + Send + Sync + 'static) -> Self {
        FluxSpec { surface, smearing: Arc::new(smearing) }
    }

    pub fn constant(surface: Surface, f: LieVector) -> Self {
        Self::new(surface, move |_| f)
    }

    pub fn smearing(&self, p: &Point) -> LieVector {
        (self.smearing)(p)
    }
}

/// Applies `Σ_slots c_s · smeared(fₛ)` at one puncture, where `c_s` is
/// given per half-edge.
fn apply_at_puncture(f: &CylFun, p: &Puncture, weights: &[f64], direction: LieVector, scale: C64) -> CylFun {
    let hes: Vec<_> = p.half_edges.iter().map(|h| h.half_edge()).collect();
    apply_slot_operator(f, &hes, |slots| {
        let dims: Vec<usize> = slots.iter().map(|s| s.0.dim()).collect();
        let n = dims.iter().product();
        let mut m = zeros(n, n);
        let mut any = false;
        for (k, ((j, side), w)) in slots.iter().zip(weights).enumerate() {
            if *w != 0.0 {
                m += embed(&smeared_generator(*j, &direction, *side), k, &dims) * (scale * *w);
                any = true;
            }
        }
        any.then_some(m)
    })
}

pub(crate) fn sum_on_graph(
    parts: Vec<CylFun>,
    graph: &Arc<crate::graph::EmbeddedGraph>,
) -> Result<CylFun, OperatorError> {
    let mut out = CylFun::zero(graph);
    for p in parts {
        out = out.add_scaled(&p, C64::new(1.0, 0.0))?;
    }
    Ok(out)
}

/// `X_{S,f} Ψ = ½ Σ_p Σ_{e at p} κ(e) fⁱ(p) Ĵᵢ^{(p,e)} Ψ`, on the graph of
/// `Ψ` subdivided at the punctures of `S`.
pub fn flux_apply(flux: &FluxSpec, psi: &CylFun) -> Result<CylFun, OperatorError> {
    let pun = punctures(psi.graph(), &flux.surface)?;
    let fine = promote(psi, &pun.refinement)?;
    let mut parts = Vec::new();
    for p in &pun.punctures {
        let kappas: Vec<f64> = p.half_edges.iter().map(|h| f64::from(h.kappa)).collect();
        parts.push(apply_at_puncture(&fine, p, &kappas, flux.smearing(&p.point), C64::new(0.5, 0.0)));
    }
    sum_on_graph(parts, &pun.graph)
}

/// The matrix `⟨b_r, A b_c⟩` of an operator in an orthonormal basis.
pub fn operator_matrix(
    basis: &[CylFun],
    apply: impl Fn(&CylFun) -> Result<CylFun, OperatorError>,
) -> Result<CMatrix, OperatorError> {
    let n = basis.len();
    let mut defect: f64 = 0.0;
    for r in 0..n {
        for c in r..n {
            let want = if r == c { 1.0 } else { 0.0 };
            defect = defect.max((inner_product(&basis[r], &basis[c])? - want).norm());
        }
    }
    if defect > 1e-10 {
        return Err(OperatorError::NotOrthonormal { defect });
    }
    let images = basis.iter().map(apply).collect::<Result<Vec<_>, _>>()?;
    let mut m = zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            m[(r, c)] = inner_product(&basis[r], &images[c])?;
        }
    }
    Ok(m)
}

/// Matrix of [`flux_apply`] in an orthonormal basis, checked Hermitian to
/// `1e-12` and returned exactly Hermitian.
pub fn flux_matrix(flux: &FluxSpec, basis: &[CylFun]) -> Result<CMatrix, OperatorError> {
    let m = operator_matrix(basis, |b| flux_apply(flux, b))?;
    let defect = hermitian_defect(&m);
    if defect > 1e-12 {
        return Err(OperatorError::NotHermitian { defect });
    }
    Ok((&m + m.adjoint()) * C64::new(0.5, 0.0))
}

/// `X₁(X₂Ψ) − X₂(X₁Ψ)` by double application.
pub fn flux_commutator(f1: &FluxSpec, f2: &FluxSpec, psi: &CylFun) -> Result<CylFun, OperatorError> {
    let a = flux_apply(f1, &flux_apply(f2, psi)?)?;
    let b = flux_apply(f2, &flux_apply(f1, psi)?)?;
    Ok(a.add_scaled(&b, C64::new(-1.0, 0.0))?)
}

/// The same commutator from the vertex sum
/// `¼ Σ_{p ∈ S₁∩S₂} Σ_{e at p} κ₁(e) κ₂(e) i εᵢⱼₖ f₁ⁱ f₂ʲ Ĵₖ^{(p,e)}`.
///
/// Half-edges above or below both surfaces enter with `+`, the mixed ones
/// with `−`.
pub fn flux_commutator_closed_form(f1: &FluxSpec, f2: &FluxSpec, psi: &CylFun) -> Result<CylFun, OperatorError> {
    let p1 = punctures(psi.graph(), &f1.surface)?;
    let p2 = punctures(&p1.graph, &f2.surface)?;
    let g = p2.graph.clone();
    let fine = promote(&promote(psi, &p1.refinement)?, &p2.refinement)?;
    let on_first = punctures(&g, &f1.surface)?;
    let mut parts = Vec::new();
    for a in &on_first.punctures {
        let Some(b) = p2.punctures.iter().find(|b| b.vertex == a.vertex) else { continue };
        let weights: Vec<f64> = a
            .half_edges
            .iter()
            .zip(&b.half_edges)
            .map(|(x, y)| {
                debug_assert_eq!(x.half_edge(), y.half_edge());
                f64::from(x.kappa * y.kappa)
            })
            .collect();
        let cross = f1.smearing(&a.point).bracket(&f2.smearing(&a.point));
        parts.push(apply_at_puncture(&fine, a, &weights, cross, C64::new(0.0, 0.25)));
    }
    sum_on_graph(parts, &g)
}
