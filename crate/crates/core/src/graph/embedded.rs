use alloc::vec;
use alloc::vec::Vec;

use super::geometry::{distance_to_polyline, segment_contact, Contact, Point, TOL};
use super::GraphError;

/// An oriented edge with its polyline embedding.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub start: usize,
    pub end: usize,
    /// At least two points; the first and last equal the endpoint vertices.
    pub polyline: Vec<Point>,
}

impl Edge {
    pub fn segments(&self) -> usize {
        self.polyline.len() - 1
    }
}

/// Which end of an edge a half-edge sits at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeEnd {
    Start,
    End,
}

/// The germ of an edge at one of its endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge {
    pub edge: usize,
    pub end: EdgeEnd,
}

/// A graph embedded in a chart of ℝ³. Edge ids are indices into `edges`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedGraph {
    vertices: Vec<Point>,
    edges: Vec<Edge>,
}

impl EmbeddedGraph {
    /// Builds a graph, checking ids, endpoint consistency and segment
    /// lengths. Intersections are checked separately by [`validate`].
    pub fn new(vertices: Vec<Point>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        for (id, e) in edges.iter().enumerate() {
            for v in [e.start, e.end] {
                if v >= vertices.len() {
                    return Err(GraphError::VertexOutOfRange { edge: id, vertex: v });
                }
            }
            if e.polyline.len() < 2 {
                return Err(GraphError::DegenerateEdge { edge: id });
            }
            let first = e.polyline[0];
            let last = e.polyline[e.polyline.len() - 1];
            if (first - vertices[e.start]).norm() > TOL || (last - vertices[e.end]).norm() > TOL {
                return Err(GraphError::EndpointMismatch { edge: id });
            }
            if let Some(k) = e.polyline.windows(2).position(|w| (w[1] - w[0]).norm() <= TOL) {
                return Err(GraphError::DegenerateSegment { edge: id, segment: k });
            }
            if e.start == e.end && e.polyline.len() < 4 {
                return Err(GraphError::DegenerateEdge { edge: id });
            }
        }
        Ok(EmbeddedGraph { vertices, edges })
    }

    /// Straight edges between the listed vertex pairs.
    pub fn straight(vertices: Vec<Point>, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(pairs.len());
        for (id, &(a, b)) in pairs.iter().enumerate() {
            if a >= vertices.len() || b >= vertices.len() {
                return Err(GraphError::VertexOutOfRange { edge: id, vertex: a.max(b) });
            }
            edges.push(Edge { start: a, end: b, polyline: vec![vertices[a], vertices[b]] });
        }
        Self::new(vertices, edges)
    }

    pub(crate) fn from_parts_unchecked(vertices: Vec<Point>, edges: Vec<Edge>) -> Self {
        EmbeddedGraph { vertices, edges }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn vertex(&self, id: usize) -> Point {
        self.vertices[id]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Half-edges at `v`, ordered by edge id with `Start` before `End`.
    pub fn half_edges_at(&self, v: usize) -> Vec<HalfEdge> {
        let mut out = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if e.start == v {
                out.push(HalfEdge { edge: id, end: EdgeEnd::Start });
            }
            if e.end == v {
                out.push(HalfEdge { edge: id, end: EdgeEnd::End });
            }
        }
        out
    }

    pub fn vertex_of(&self, he: HalfEdge) -> usize {
        let e = &self.edges[he.edge];
        match he.end {
            EdgeEnd::Start => e.start,
            EdgeEnd::End => e.end,
        }
    }

    /// Unit tangent pointing out of the vertex along the half-edge.
    pub fn outgoing_tangent(&self, he: HalfEdge) -> Point {
        let p = &self.edges[he.edge].polyline;
        let n = p.len();
        let t = match he.end {
            EdgeEnd::Start => p[1] - p[0],
            EdgeEnd::End => p[n - 2] - p[n - 1],
        };
        t / t.norm()
    }

    /// A 2-valent vertex joining two distinct edges whose tangents continue
    /// each other, i.e. a point that merely splits an edge.
    pub fn is_spurious(&self, v: usize) -> bool {
        let hes = self.half_edges_at(v);
        if hes.len() != 2 || hes[0].edge == hes[1].edge {
            return false;
        }
        (self.outgoing_tangent(hes[0]) + self.outgoing_tangent(hes[1])).norm() < TOL
    }

    /// Whether the edge's polyline closes on itself.
    pub fn is_loop(&self, edge: usize) -> bool {
        self.edges[edge].start == self.edges[edge].end
    }
}

/// Checks that edges meet only at shared endpoint vertices and that no
/// vertex sits on the interior of an edge.
pub fn validate(g: &EmbeddedGraph) -> Result<(), GraphError> {
    let edges = g.edges();
    for (v, x) in g.vertices().iter().enumerate() {
        for (id, e) in edges.iter().enumerate() {
            if distance_to_polyline(x, &e.polyline) >= TOL {
                continue;
            }
            let first = e.polyline[0];
            let last = e.polyline[e.polyline.len() - 1];
            let terminal = (e.start == v && (x - first).norm() < TOL) || (e.end == v && (x - last).norm() < TOL);
            if !terminal {
                return Err(GraphError::VertexOnEdge { vertex: v, edge: id, point: (*x).into() });
            }
        }
    }
    for (i, a) in edges.iter().enumerate() {
        for (j, b) in edges.iter().enumerate().skip(i) {
            for ka in 0..a.segments() {
                let kb0 = if i == j { ka + 1 } else { 0 };
                for kb in kb0..b.segments() {
                    let c = segment_contact(
                        &a.polyline[ka],
                        &a.polyline[ka + 1],
                        &b.polyline[kb],
                        &b.polyline[kb + 1],
                        TOL,
                    );
                    match c {
                        Contact::None => {}
                        Contact::Overlap { s, .. } => {
                            let p = a.polyline[ka] + (a.polyline[ka + 1] - a.polyline[ka]) * s[0];
                            return Err(GraphError::EdgeContact { first: i, second: j, point: p.into() });
                        }
                        Contact::Point { s, t, point } => {
                            if !allowed_contact(g, (i, ka, s), (j, kb, t)) {
                                return Err(GraphError::EdgeContact { first: i, second: j, point: point.into() });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn seg_len(e: &Edge, k: usize) -> f64 {
    (e.polyline[k + 1] - e.polyline[k]).norm()
}

/// The vertex a segment parameter sits at, if it is a polyline end.
fn terminal_vertex(g: &EmbeddedGraph, edge: usize, k: usize, s: f64) -> Option<usize> {
    let e = g.edge(edge);
    let len = seg_len(e, k);
    if k == 0 && s * len < TOL {
        Some(e.start)
    } else if k == e.segments() - 1 && (1.0 - s) * len < TOL {
        Some(e.end)
    } else {
        None
    }
}

fn allowed_contact(g: &EmbeddedGraph, a: (usize, usize, f64), b: (usize, usize, f64)) -> bool {
    let (ea, ka, s) = a;
    let (eb, kb, t) = b;
    if ea == eb && kb == ka + 1 {
        // Consecutive segments of one polyline share their joint.
        let e = g.edge(ea);
        if (1.0 - s) * seg_len(e, ka) < TOL && t * seg_len(e, kb) < TOL {
            return true;
        }
    }
    match (terminal_vertex(g, ea, ka, s), terminal_vertex(g, eb, kb, t)) {
        (Some(va), Some(vb)) => va == vb,
        _ => false,
    }
}
