//! The job input document.
//!
//! A single JSON object holds the graph, the surfaces, the states and the
//! job parameters:
//!
//! ```json
//! {
//!   "vertices": [[0, 0, -1], [0, 0, 1]],
//!   "edges": [{ "from": 0, "to": 1, "polyline": [[0, 0, -1], [0, 0, 1]] }],
//!   "surfaces": [{ "base": [0, 0, 0], "normal": [0, 0, 1],
//!                  "polygon": [[-1, -1, 0], [1, -1, 0], [1, 1, 0], [-1, 1, 0]],
//!                  "smearing": [0, 0, 1] }],
//!   "states": [{ "edges": [{ "edge": 0, "2j": 1, "2m": 1, "2n": -1 }] }],
//!   "parameters": { "gamma": 1.0, "max_spin": 2 }
//! }
//! ```
//!
//! `polyline` defaults to the straight segment between the two vertices.
//! A state is either a single term or `{"terms": [...]}`. A term lists
//! `{edge, 2j, 2m, 2n}` records; edges without a record carry the trivial
//! label. With `intertwiners` (one index per vertex) the term is the
//! spin-network state with those vertex vectors, and only `2j` is read.

use std::sync::Arc;

use qgeom_core::cyl::{vertex_product_function, vertex_space, CylFun, EdgeLabel};
use qgeom_core::graph::{validate, Edge, EmbeddedGraph, Point, Surface};
use qgeom_core::su2::{HalfInt, LieVector};
use qgeom_core::C64;
use serde::Deserialize;

use crate::JobError;

type Vec3 = [f64; 3];

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub vertices: Vec<Vec3>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default)]
    pub surfaces: Vec<SurfaceSpec>,
    #[serde(default)]
    pub states: Vec<StateSpec>,
    #[serde(default)]
    pub parameters: Parameters,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub from: usize,
    pub to: usize,
    pub polyline: Option<Vec<Vec3>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpec {
    pub base: Vec3,
    pub normal: Vec3,
    pub polygon: Vec<Vec3>,
    /// Constant smearing function for fluxes through this surface.
    pub smearing: Option<Vec3>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelRecord {
    pub edge: usize,
    #[serde(rename = "2j")]
    pub twice_j: i32,
    #[serde(rename = "2m", default)]
    pub twice_m: Option<i32>,
    #[serde(rename = "2n", default)]
    pub twice_n: Option<i32>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    #[serde(default)]
    pub edges: Vec<LabelRecord>,
    pub intertwiners: Option<Vec<usize>>,
    /// `[re, im]`, default `[1, 0]`.
    pub coefficient: Option<[f64; 2]>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    #[serde(flatten)]
    pub single: TermSpec,
    #[serde(default)]
    pub terms: Vec<TermSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionSpec {
    /// `constant[a][i] = A_aⁱ`.
    pub constant: [Vec3; 3],
    /// `linear[a][b][i]`, the coefficient of `x^b` in `A_aⁱ`.
    pub linear: Option<[[Vec3; 3]; 3]>,
}

/// Job parameters; command line flags take precedence.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    pub gamma: Option<f64>,
    pub c: Option<f64>,
    /// Twice the largest spin.
    pub max_spin: Option<i32>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    /// Restrict to gauge-invariant states (default true).
    pub gauge_invariant: Option<bool>,
    /// Surface indices used by the command (default `[0]`, or `[0, 1]`).
    pub surfaces: Option<Vec<usize>>,
    /// Vertices whose volume is summed (default all).
    pub region: Option<Vec<usize>>,
    pub connection: Option<ConnectionSpec>,
}

impl Document {
    /// Parses a document; `source` names it in error messages.
    pub fn parse(text: &str, source: &str) -> Result<Document, JobError> {
        let doc: Document = serde_json::from_str(text).map_err(|e| JobError::Parse {
            location: format!("{source}:{}:{}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        doc.check_indices(source)?;
        Ok(doc)
    }

    fn check_indices(&self, source: &str) -> Result<(), JobError> {
        let err = |path: String, message: String| JobError::Parse { location: format!("{source}: {path}"), message };
        let nv = self.vertices.len();
        let ne = self.edges.len();
        for (k, e) in self.edges.iter().enumerate() {
            for (name, v) in [("from", e.from), ("to", e.to)] {
                if v >= nv {
                    return Err(err(
                        format!("edges[{k}].{name}"),
                        format!("vertex {v} does not exist ({nv} vertices)"),
                    ));
                }
            }
        }
        for (s, state) in self.states.iter().enumerate() {
            let terms: Vec<(String, &TermSpec)> = if state.terms.is_empty() {
                vec![(format!("states[{s}]"), &state.single)]
            } else {
                if !state.single.edges.is_empty() || state.single.intertwiners.is_some() {
                    return Err(err(format!("states[{s}]"), "use either `terms` or a single term".into()));
                }
                state.terms.iter().enumerate().map(|(t, term)| (format!("states[{s}].terms[{t}]"), term)).collect()
            };
            for (path, term) in terms {
                let mut seen = vec![false; ne];
                for (r, rec) in term.edges.iter().enumerate() {
                    let here = format!("{path}.edges[{r}]");
                    if rec.edge >= ne {
                        return Err(err(here, format!("edge {} does not exist ({ne} edges)", rec.edge)));
                    }
                    if std::mem::replace(&mut seen[rec.edge], true) {
                        return Err(err(here, format!("edge {} listed twice", rec.edge)));
                    }
                    if rec.twice_j < 0 {
                        return Err(err(here, "2j must be non-negative".into()));
                    }
                    let admissible = |t: i32| t.abs() <= rec.twice_j && (rec.twice_j - t) % 2 == 0;
                    if term.intertwiners.is_none() {
                        match (rec.twice_m, rec.twice_n) {
                            (Some(m), Some(n)) if admissible(m) && admissible(n) => {}
                            (Some(_), Some(_)) => {
                                return Err(err(here, "2m and 2n must lie in -2j..=2j with the parity of 2j".into()))
                            }
                            _ => return Err(err(here, "monomial terms need 2m and 2n".into())),
                        }
                    }
                }
                if let Some(iw) = &term.intertwiners {
                    if iw.len() != nv {
                        return Err(err(
                            format!("{path}.intertwiners"),
                            format!("expected {nv} indices, got {}", iw.len()),
                        ));
                    }
                }
            }
        }
        for (k, s) in self.surfaces.iter().enumerate() {
            if s.polygon.len() < 3 {
                return Err(err(format!("surfaces[{k}].polygon"), "needs at least three corners".into()));
            }
        }
        let p = &self.parameters;
        for (name, list) in [("surfaces", &p.surfaces), ("region", &p.region)] {
            let bound = if name == "surfaces" { self.surfaces.len() } else { nv };
            if let Some(list) = list {
                if let Some(k) = list.iter().position(|&i| i >= bound) {
                    return Err(err(format!("parameters.{name}[{k}]"), format!("index {} out of range", list[k])));
                }
            }
        }
        Ok(())
    }

    /// The embedded graph, with every edge intersection checked.
    pub fn graph(&self) -> Result<Arc<EmbeddedGraph>, JobError> {
        let vertices: Vec<Point> = self.vertices.iter().map(|&p| Point::from(p)).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                start: e.from,
                end: e.to,
                polyline: match &e.polyline {
                    Some(p) => p.iter().map(|&x| Point::from(x)).collect(),
                    None => vec![vertices[e.from], vertices[e.to]],
                },
            })
            .collect();
        let g = EmbeddedGraph::new(vertices, edges)?;
        validate(&g)?;
        Ok(Arc::new(g))
    }

    pub fn surface(&self, k: usize) -> Result<Surface, JobError> {
        let s = self.surfaces.get(k).ok_or_else(|| JobError::Missing(format!("surface {k}")))?;
        Ok(Surface::new(s.base.into(), s.normal.into(), s.polygon.iter().map(|&p| Point::from(p)).collect())?)
    }

    /// Smearing of surface `k`, default `τ₃`.
    pub fn smearing(&self, k: usize) -> LieVector {
        LieVector(self.surfaces[k].smearing.unwrap_or([0.0, 0.0, 1.0]))
    }

    /// State `k` as a function on `graph`.
    pub fn state(&self, k: usize, graph: &Arc<EmbeddedGraph>, gauge_invariant: bool) -> Result<CylFun, JobError> {
        let spec = self.states.get(k).ok_or_else(|| JobError::Missing(format!("state {k}")))?;
        let terms = if spec.terms.is_empty() { std::slice::from_ref(&spec.single) } else { &spec.terms[..] };
        let mut out = CylFun::zero(graph);
        for (t, term) in terms.iter().enumerate() {
            let c = term.coefficient.map_or(C64::new(1.0, 0.0), |[re, im]| C64::new(re, im));
            let f = build_term(term, graph, gauge_invariant)
                .map_err(|message| JobError::Parse { location: format!("states[{k}] term {t}"), message })?;
            out = out.add_scaled(&f, c).map_err(qgeom_core::OperatorError::from)?;
        }
        Ok(out)
    }
}

fn build_term(term: &TermSpec, graph: &Arc<EmbeddedGraph>, gauge_invariant: bool) -> Result<CylFun, String> {
    let ne = graph.num_edges();
    match &term.intertwiners {
        None => {
            let mut labels = vec![EdgeLabel::TRIVIAL; ne];
            for rec in &term.edges {
                let (m, n) = (rec.twice_m.unwrap_or(0), rec.twice_n.unwrap_or(0));
                labels[rec.edge] =
                    EdgeLabel::new(HalfInt::from_twice(rec.twice_j), HalfInt::from_twice(m), HalfInt::from_twice(n))
                        .map_err(|e| e.to_string())?;
            }
            CylFun::monomial(graph, labels).map_err(|e| e.to_string())
        }
        Some(choice) => {
            let mut spins = vec![HalfInt::ZERO; ne];
            for rec in &term.edges {
                spins[rec.edge] = HalfInt::from_twice(rec.twice_j);
            }
            let mut vectors = Vec::with_capacity(choice.len());
            for (v, &i) in choice.iter().enumerate() {
                let space = vertex_space(graph, v, &spins, gauge_invariant);
                if i >= space.ncols() {
                    return Err(format!("vertex {v} has {} admissible vectors, index {i} requested", space.ncols()));
                }
                vectors.push(space.column(i).into_owned());
            }
            vertex_product_function(graph, &spins, &vectors).map_err(|e| e.to_string())
        }
    }
}
