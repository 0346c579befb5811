use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::embedded::{validate, Edge, EmbeddedGraph};
use super::geometry::{project_onto_segment, same_curve, segment_contact, Contact, Point, TOL};
use super::GraphError;

/// Direction in which a fine edge is traversed inside a coarse edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Forward,
    Reversed,
}

/// Correspondence from each coarse edge to the chain of fine edges that
/// traces it, listed from the coarse start to the coarse end.
#[derive(Clone, Debug)]
pub struct RefinementMap {
    pub coarse: Arc<EmbeddedGraph>,
    pub fine: Arc<EmbeddedGraph>,
    pub chains: Vec<Vec<(usize, Orientation)>>,
}

impl RefinementMap {
    pub fn identity(g: &Arc<EmbeddedGraph>) -> Self {
        RefinementMap {
            coarse: g.clone(),
            fine: g.clone(),
            chains: (0..g.num_edges()).map(|e| vec![(e, Orientation::Forward)]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.chains.len() == self.fine.num_edges()
            && self.chains.iter().enumerate().all(|(e, c)| c.as_slice() == [(e, Orientation::Forward)])
    }

    /// The polyline obtained by concatenating the image chain of `edge`.
    pub fn chain_polyline(&self, edge: usize) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::new();
        for &(id, o) in &self.chains[edge] {
            let mut p = self.fine.edge(id).polyline.clone();
            if o == Orientation::Reversed {
                p.reverse();
            }
            let skip = usize::from(!out.is_empty());
            out.extend(p.into_iter().skip(skip));
        }
        out
    }

    /// Checks that every chain is connected and traces its coarse edge.
    pub fn check(&self) -> Result<(), GraphError> {
        if self.chains.len() != self.coarse.num_edges() {
            return Err(GraphError::RefinementMismatch { edge: self.chains.len().min(self.coarse.num_edges()) });
        }
        for (e, chain) in self.chains.iter().enumerate() {
            if chain.is_empty() || chain.iter().any(|&(id, _)| id >= self.fine.num_edges()) {
                return Err(GraphError::RefinementMismatch { edge: e });
            }
            let ends = |&(id, o): &(usize, Orientation)| {
                let f = self.fine.edge(id);
                match o {
                    Orientation::Forward => (f.start, f.end),
                    Orientation::Reversed => (f.end, f.start),
                }
            };
            if chain.windows(2).any(|w| ends(&w[0]).1 != ends(&w[1]).0) {
                return Err(GraphError::RefinementMismatch { edge: e });
            }
            if !same_curve(&self.chain_polyline(e), &self.coarse.edge(e).polyline, TOL) {
                return Err(GraphError::RefinementMismatch { edge: e });
            }
        }
        Ok(())
    }

    /// `self` followed by `next` (whose coarse graph is `self.fine`).
    pub fn then(&self, next: &RefinementMap) -> RefinementMap {
        let chains = self
            .chains
            .iter()
            .map(|chain| {
                let mut out = Vec::new();
                for &(mid, o) in chain {
                    let sub = &next.chains[mid];
                    match o {
                        Orientation::Forward => out.extend(sub.iter().copied()),
                        Orientation::Reversed => out.extend(sub.iter().rev().map(|&(f, p)| (f, flip(p)))),
                    }
                }
                out
            })
            .collect();
        RefinementMap { coarse: self.coarse.clone(), fine: next.fine.clone(), chains }
    }
}

fn flip(o: Orientation) -> Orientation {
    match o {
        Orientation::Forward => Orientation::Reversed,
        Orientation::Reversed => Orientation::Forward,
    }
}

fn find_or_add(vertices: &mut Vec<Point>, p: Point) -> usize {
    if let Some(i) = vertices.iter().position(|v| (v - p).norm() < TOL) {
        return i;
    }
    vertices.push(p);
    vertices.len() - 1
}

fn point_at(poly: &[Point], param: f64) -> Point {
    let k = (libm::floor(param) as usize).min(poly.len() - 2);
    let s = param - k as f64;
    poly[k] + (poly[k + 1] - poly[k]) * s
}

/// Cuts edges at arc parameters (`segment index + fraction`).
///
/// The first piece of every edge keeps its id; further pieces are appended
/// after all original edges. Returns the fine graph and, per original edge,
/// its pieces in order. Cut points within tolerance of polyline joints
/// snap to them, and new vertices are merged with existing ones in reach.
pub(crate) fn split_edges(g: &EmbeddedGraph, cuts: &[Vec<f64>]) -> (EmbeddedGraph, Vec<Vec<usize>>) {
    let mut vertices = g.vertices().to_vec();
    let mut first_pieces: Vec<Edge> = Vec::with_capacity(g.num_edges());
    let mut extra: Vec<Edge> = Vec::new();
    let mut chains = Vec::with_capacity(g.num_edges());
    let n_orig = g.num_edges();
    for (id, e) in g.edges().iter().enumerate() {
        let poly = &e.polyline;
        let nseg = e.segments() as f64;
        let (first, last) = (poly[0], poly[poly.len() - 1]);
        let mut params: Vec<f64> = Vec::new();
        for &c in cuts.get(id).map(Vec::as_slice).unwrap_or(&[]) {
            let mut c = c.clamp(0.0, nseg);
            let rounded = libm::round(c);
            if (point_at(poly, c) - poly[rounded as usize]).norm() < TOL {
                c = rounded;
            }
            let p = point_at(poly, c);
            if c <= 0.0 || c >= nseg || (p - first).norm() < TOL || (p - last).norm() < TOL {
                continue;
            }
            params.push(c);
        }
        params.sort_by(f64::total_cmp);
        params.dedup_by(|b, a| (point_at(poly, *a) - point_at(poly, *b)).norm() < TOL);
        let mut bounds = vec![0.0];
        bounds.extend(params.iter().copied());
        bounds.push(nseg);
        let mut ends = vec![e.start];
        for &c in &params {
            ends.push(find_or_add(&mut vertices, point_at(poly, c)));
        }
        ends.push(e.end);
        let mut chain = Vec::with_capacity(bounds.len() - 1);
        for k in 0..bounds.len() - 1 {
            let (a, b) = (bounds[k], bounds[k + 1]);
            let (va, vb) = (ends[k], ends[k + 1]);
            let mut piece = vec![vertices[va]];
            let lo = libm::floor(a) as usize + 1;
            for (i, p) in poly.iter().enumerate().skip(lo) {
                if i as f64 >= b {
                    break;
                }
                piece.push(*p);
            }
            piece.push(vertices[vb]);
            let edge = Edge { start: va, end: vb, polyline: piece };
            if k == 0 {
                first_pieces.push(edge);
                chain.push(id);
            } else {
                extra.push(edge);
                chain.push(n_orig + extra.len() - 1);
            }
        }
        chains.push(chain);
    }
    first_pieces.extend(extra);
    (EmbeddedGraph::from_parts_unchecked(vertices, first_pieces), chains)
}

fn forward_map(coarse: &Arc<EmbeddedGraph>, fine: EmbeddedGraph, chains: Vec<Vec<usize>>) -> RefinementMap {
    RefinementMap {
        coarse: coarse.clone(),
        fine: Arc::new(fine),
        chains: chains.into_iter().map(|c| c.into_iter().map(|id| (id, Orientation::Forward)).collect()).collect(),
    }
}

/// Arc parameter of `point` on the polyline, with its distance.
fn locate(poly: &[Point], point: &Point) -> (f64, f64) {
    let mut best = (0.0, f64::INFINITY);
    for k in 0..poly.len() - 1 {
        let (s, d) = project_onto_segment(point, &poly[k], &poly[k + 1]);
        if d < best.1 {
            best = (k as f64 + s, d);
        }
    }
    best
}

/// Splits `edge` at an interior point, adding one vertex. The map's fine
/// graph is the subdivided graph.
pub fn subdivide(g: &Arc<EmbeddedGraph>, edge: usize, point: Point) -> Result<RefinementMap, GraphError> {
    if edge >= g.num_edges() {
        return Err(GraphError::EdgeOutOfRange { edge });
    }
    let poly = &g.edge(edge).polyline;
    let (param, d) = locate(poly, &point);
    if d >= TOL {
        return Err(GraphError::PointNotOnEdge { edge, point: point.into() });
    }
    if (point - poly[0]).norm() < TOL || (point - poly[poly.len() - 1]).norm() < TOL {
        return Err(GraphError::PointAtEndpoint { edge, point: point.into() });
    }
    let mut cuts = vec![Vec::new(); g.num_edges()];
    cuts[edge].push(param);
    let (fine, chains) = split_edges(g, &cuts);
    Ok(forward_map(g, fine, chains))
}

/// A graph containing subdivided copies of two graphs.
#[derive(Clone, Debug)]
pub struct CommonRefinement {
    pub graph: Arc<EmbeddedGraph>,
    pub first: RefinementMap,
    pub second: RefinementMap,
}

/// Smallest common refinement of two valid graphs.
///
/// Edges of `g1` keep their ids. Stretches of `g2` that coincide with
/// stretches of `g1` are identified with them (possibly reversed).
pub fn common_refinement(g1: &Arc<EmbeddedGraph>, g2: &Arc<EmbeddedGraph>) -> Result<CommonRefinement, GraphError> {
    if Arc::ptr_eq(g1, g2) || **g1 == **g2 {
        let mut second = RefinementMap::identity(g1);
        second.coarse = g2.clone();
        return Ok(CommonRefinement { graph: g1.clone(), first: RefinementMap::identity(g1), second });
    }
    let n1 = g1.num_edges();
    let mut vertices = g1.vertices().to_vec();
    let mut edges = g1.edges().to_vec();
    for e in g2.edges() {
        let start = find_or_add(&mut vertices, g2.vertex(e.start));
        let end = find_or_add(&mut vertices, g2.vertex(e.end));
        let mut polyline = e.polyline.clone();
        let last = polyline.len() - 1;
        polyline[0] = vertices[start];
        polyline[last] = vertices[end];
        edges.push(Edge { start, end, polyline });
    }
    for v in g2.vertices() {
        find_or_add(&mut vertices, *v);
    }
    let union = EmbeddedGraph::from_parts_unchecked(vertices, edges);
    let mut cuts = vec![Vec::new(); union.num_edges()];
    for i in 0..n1 {
        for j in n1..union.num_edges() {
            let (a, b) = (&union.edge(i).polyline, &union.edge(j).polyline);
            for ka in 0..a.len() - 1 {
                for kb in 0..b.len() - 1 {
                    match segment_contact(&a[ka], &a[ka + 1], &b[kb], &b[kb + 1], TOL) {
                        Contact::None => {}
                        Contact::Point { s, t, .. } => {
                            cuts[i].push(ka as f64 + s);
                            cuts[j].push(kb as f64 + t);
                        }
                        Contact::Overlap { s, t } => {
                            cuts[i].extend(s.map(|x| ka as f64 + x));
                            cuts[j].extend(t.map(|x| kb as f64 + x));
                        }
                    }
                }
            }
        }
    }
    // Vertices of either graph lying on an edge of the union.
    for (v, x) in union.vertices().iter().enumerate() {
        for (id, e) in union.edges().iter().enumerate() {
            if e.start == v || e.end == v {
                continue;
            }
            let (param, d) = locate(&e.polyline, x);
            if d < TOL {
                cuts[id].push(param);
            }
        }
    }
    let (split, chains) = split_edges(&union, &cuts);
    let from_first = |piece: usize| -> bool {
        // Pieces [0, n1) and the extra pieces of g1 edges come from g1.
        chains[..n1].iter().any(|c| c.contains(&piece))
    };
    // For every piece of g2: the g1 piece it coincides with, if any.
    let mut same: Vec<Option<(usize, Orientation)>> = vec![None; split.num_edges()];
    for chain in &chains[n1..] {
        for &p in chain {
            let pe = split.edge(p);
            for q in (0..split.num_edges()).filter(|&q| from_first(q)) {
                let qe = split.edge(q);
                if qe.start == pe.start && qe.end == pe.end && same_curve(&qe.polyline, &pe.polyline, TOL) {
                    same[p] = Some((q, Orientation::Forward));
                    break;
                }
                if qe.start == pe.end && qe.end == pe.start {
                    let mut rev = pe.polyline.clone();
                    rev.reverse();
                    if same_curve(&qe.polyline, &rev, TOL) {
                        same[p] = Some((q, Orientation::Reversed));
                        break;
                    }
                }
            }
        }
    }
    let mut new_id = vec![usize::MAX; split.num_edges()];
    let mut kept = Vec::new();
    for (id, e) in split.edges().iter().enumerate() {
        if same[id].is_none() {
            new_id[id] = kept.len();
            kept.push(e.clone());
        }
    }
    let graph = EmbeddedGraph::from_parts_unchecked(split.vertices().to_vec(), kept);
    validate(&graph).map_err(|err| match err {
        GraphError::EdgeContact { first, second, point } => GraphError::NonConformingOverlap { first, second, point },
        other => other,
    })?;
    let graph = Arc::new(graph);
    let resolve = |p: usize| match same[p] {
        Some((q, o)) => (new_id[q], o),
        None => (new_id[p], Orientation::Forward),
    };
    let first = RefinementMap {
        coarse: g1.clone(),
        fine: graph.clone(),
        chains: chains[..n1].iter().map(|c| c.iter().map(|&p| resolve(p)).collect()).collect(),
    };
    let second = RefinementMap {
        coarse: g2.clone(),
        fine: graph.clone(),
        chains: chains[n1..].iter().map(|c| c.iter().map(|&p| resolve(p)).collect()).collect(),
    };
    Ok(CommonRefinement { graph, first, second })
}

/// Structural equality up to renumbering of vertices and edges: same vertex
/// positions and same oriented edge polylines.
pub fn same_up_to_relabeling(a: &EmbeddedGraph, b: &EmbeddedGraph) -> bool {
    if a.num_edges() != b.num_edges() || a.num_vertices() != b.num_vertices() {
        return false;
    }
    let vertices_match = a.vertices().iter().all(|x| b.vertices().iter().any(|y| (x - y).norm() < TOL));
    if !vertices_match {
        return false;
    }
    let mut used = vec![false; b.num_edges()];
    for ea in a.edges() {
        let found = b.edges().iter().enumerate().position(|(k, eb)| {
            !used[k]
                && ea.polyline.len() == eb.polyline.len()
                && ea.polyline.iter().zip(&eb.polyline).all(|(x, y)| (x - y).norm() < TOL)
        });
        match found {
            Some(k) => used[k] = true,
            None => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64, z: f64) -> Point {
        Point::new(x, y, z)
    }

    fn segment() -> Arc<EmbeddedGraph> {
        Arc::new(EmbeddedGraph::straight(vec![pt(0., 0., 0.), pt(2., 0., 0.)], &[(0, 1)]).unwrap())
    }

    #[test]
    fn subdivide_at_midpoint() {
        let g = segment();
        let map = subdivide(&g, 0, pt(1., 0., 0.)).unwrap();
        assert_eq!(map.fine.num_edges(), 2);
        assert_eq!(map.fine.num_vertices(), 3);
        assert_eq!(map.chains, [vec![(0, Orientation::Forward), (1, Orientation::Forward)]]);
        assert_eq!(map.chain_polyline(0), [pt(0., 0., 0.), pt(1., 0., 0.), pt(2., 0., 0.)]);
        map.check().unwrap();
        assert!(map.fine.is_spurious(2));
        validate(&map.fine).unwrap();
    }

    #[test]
    fn subdivide_errors() {
        let g = segment();
        assert!(matches!(subdivide(&g, 0, pt(1., 1., 0.)), Err(GraphError::PointNotOnEdge { .. })));
        assert!(matches!(subdivide(&g, 0, pt(2., 0., 0.)), Err(GraphError::PointAtEndpoint { .. })));
        assert!(matches!(subdivide(&g, 3, pt(1., 0., 0.)), Err(GraphError::EdgeOutOfRange { edge: 3 })));
    }

    #[test]
    fn chain_reproduces_bent_polyline_pointwise() {
        let vs = vec![pt(0., 0., 0.), pt(2., 2., 0.)];
        let poly = vec![pt(0., 0., 0.), pt(1., 0., 0.), pt(1., 1., 0.), pt(2., 2., 0.)];
        let g = Arc::new(EmbeddedGraph::new(vs, vec![Edge { start: 0, end: 1, polyline: poly.clone() }]).unwrap());
        let map = subdivide(&g, 0, pt(1., 0.5, 0.)).unwrap();
        let chain = map.chain_polyline(0);
        assert_eq!(chain, [poly[0], poly[1], pt(1., 0.5, 0.), poly[2], poly[3]]);
        // Splitting at a joint adds no new polyline point.
        let map = subdivide(&g, 0, pt(1., 0., 0.)).unwrap();
        assert_eq!(map.chain_polyline(0), poly);
    }

    #[test]
    fn double_subdivision_commutes() {
        let g = segment();
        let (p, q) = (pt(0.5, 0., 0.), pt(1.5, 0., 0.));
        let a = subdivide(&g, 0, p).unwrap();
        let a = subdivide(&a.fine, 0, q).or_else(|_| subdivide(&a.fine, 1, q)).unwrap();
        let b = subdivide(&g, 0, q).unwrap();
        let b = subdivide(&b.fine, 0, p).unwrap();
        assert!(same_up_to_relabeling(&a.fine, &b.fine));
    }

    #[test]
    fn identical_graphs_refine_to_themselves() {
        let g = segment();
        let h = Arc::new((*g).clone());
        let r = common_refinement(&g, &h).unwrap();
        assert!(Arc::ptr_eq(&r.graph, &g));
        assert!(r.first.is_identity() && r.second.is_identity());
    }

    #[test]
    fn crossing_edges_refine_to_four() {
        let g1 = Arc::new(EmbeddedGraph::straight(vec![pt(-1., 0., 0.), pt(1., 0., 0.)], &[(0, 1)]).unwrap());
        let g2 = Arc::new(EmbeddedGraph::straight(vec![pt(0., -1., 0.), pt(0., 1., 0.)], &[(0, 1)]).unwrap());
        let r = common_refinement(&g1, &g2).unwrap();
        assert_eq!(r.graph.num_edges(), 4);
        assert_eq!(r.graph.num_vertices(), 5);
        r.first.check().unwrap();
        r.second.check().unwrap();
        // Brute force: the only intersection of the two segments is the origin.
        let center = r.graph.vertices().iter().position(|v| v.norm() < 1e-12).unwrap();
        assert_eq!(r.graph.half_edges_at(center).len(), 4);
    }

    #[test]
    fn disjoint_graphs_give_disjoint_union() {
        let g1 = segment();
        let g2 = Arc::new(EmbeddedGraph::straight(vec![pt(0., 1., 0.), pt(2., 1., 0.)], &[(0, 1)]).unwrap());
        let r = common_refinement(&g1, &g2).unwrap();
        assert_eq!(r.graph.num_edges(), 2);
        assert_eq!(r.graph.num_vertices(), 4);
        assert_eq!(r.second.chains, [vec![(1, Orientation::Forward)]]);
    }

    #[test]
    fn shared_subchain_is_identified() {
        let g1 = segment();
        // Reversed copy of the middle third of g1 plus a spur.
        let vs = vec![pt(1.5, 0., 0.), pt(0.5, 0., 0.), pt(0.5, 1., 0.)];
        let g2 = Arc::new(EmbeddedGraph::straight(vs, &[(0, 1), (1, 2)]).unwrap());
        let r = common_refinement(&g1, &g2).unwrap();
        assert_eq!(r.graph.num_edges(), 4);
        r.first.check().unwrap();
        r.second.check().unwrap();
        assert_eq!(r.second.chains[0].len(), 1);
        assert_eq!(r.second.chains[0][0].1, Orientation::Reversed);
    }

    #[test]
    fn partial_collinear_overlap_is_cut_and_identified() {
        let g1 = segment();
        let g2 = Arc::new(EmbeddedGraph::straight(vec![pt(1., 0., 0.), pt(3., 0., 0.)], &[(0, 1)]).unwrap());
        let r = common_refinement(&g1, &g2).unwrap();
        assert_eq!(r.graph.num_edges(), 3);
        r.first.check().unwrap();
        r.second.check().unwrap();
        assert_eq!(r.first.chains[0].len(), 2);
        assert_eq!(r.second.chains[0].len(), 2);
        assert_eq!(r.second.chains[0][0], r.first.chains[0][1]);
    }

    #[test]
    fn bent_edge_crossing_is_cut() {
        // g2 crosses g1 on its first polyline segment.
        let g1 = segment();
        let vs = vec![pt(1., -1., 0.), pt(1., 1., 1.)];
        let poly = vec![pt(1., -1., 0.), pt(1., 1., 0.), pt(0.5, 1., 1.), pt(1., 1., 1.)];
        let g2 = Arc::new(EmbeddedGraph::new(vs, vec![Edge { start: 0, end: 1, polyline: poly }]).unwrap());
        let r = common_refinement(&g1, &g2).unwrap();
        r.second.check().unwrap();
        assert_eq!(r.graph.num_edges(), 4);
    }
}
