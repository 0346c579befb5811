use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::embedded::{EdgeEnd, EmbeddedGraph, HalfEdge};
use super::geometry::{sign_with_tolerance, Point, TOL};
use super::refine::{split_edges, Orientation, RefinementMap};
use super::GraphError;

/// An oriented planar polygonal patch. Its boundary does not belong to it.
#[derive(Clone, Debug, PartialEq)]
pub struct Surface {
    base: Point,
    normal: Point,
    polygon: Vec<Point>,
    u: Point,
    v: Point,
    flat: Vec<[f64; 2]>,
}

/// Where an in-plane point sits relative to the patch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

impl Surface {
    /// `polygon` lists the corners in order; they must lie in the plane
    /// through `base` orthogonal to `normal`. The normal is normalized.
    pub fn new(base: Point, normal: Point, polygon: Vec<Point>) -> Result<Self, GraphError> {
        let len = normal.norm();
        if len.is_nan() || len <= TOL || !len.is_finite() {
            return Err(GraphError::DegenerateSurface { reason: "zero normal" });
        }
        let normal = normal / len;
        if polygon.len() < 3 {
            return Err(GraphError::DegenerateSurface { reason: "polygon needs at least three corners" });
        }
        if polygon.iter().any(|p| normal.dot(&(p - base)).abs() > TOL) {
            return Err(GraphError::DegenerateSurface { reason: "polygon corner off the plane" });
        }
        let seed = if normal.x.abs() < 0.9 { Point::x() } else { Point::y() };
        let u = (seed - normal * normal.dot(&seed)).normalize();
        let v = normal.cross(&u);
        let flat = polygon.iter().map(|p| [u.dot(&(p - base)), v.dot(&(p - base))]).collect();
        Ok(Surface { base, normal, polygon, u, v, flat })
    }

    /// Regular polygon of `sides` corners inscribed in the circle of
    /// `radius` about `center`.
    pub fn regular_polygon(center: Point, normal: Point, radius: f64, sides: usize) -> Result<Self, GraphError> {
        let n = normal.normalize();
        let seed = if n.x.abs() < 0.9 { Point::x() } else { Point::y() };
        let u = (seed - n * n.dot(&seed)).normalize();
        let v = n.cross(&u);
        let corners = (0..sides)
            .map(|k| {
                let a = 2.0 * core::f64::consts::PI * k as f64 / sides as f64;
                center + (u * libm::cos(a) + v * libm::sin(a)) * radius
            })
            .collect();
        Surface::new(center, normal, corners)
    }

    /// Axis-aligned square `[x0,x1]×[y0,y1]` in the plane `z = z0`, normal `±z`.
    pub fn square_z(x: [f64; 2], y: [f64; 2], z0: f64, up: bool) -> Result<Self, GraphError> {
        let corners = vec![
            Point::new(x[0], y[0], z0),
            Point::new(x[1], y[0], z0),
            Point::new(x[1], y[1], z0),
            Point::new(x[0], y[1], z0),
        ];
        let n = if up { Point::z() } else { -Point::z() };
        Surface::new(corners[0], n, corners)
    }

    pub fn base(&self) -> Point {
        self.base
    }

    pub fn normal(&self) -> Point {
        self.normal
    }

    pub fn polygon(&self) -> &[Point] {
        &self.polygon
    }

    /// Same patch with the opposite orientation.
    pub fn reversed(&self) -> Surface {
        Surface::new(self.base, -self.normal, self.polygon.clone()).expect("reversing a valid surface")
    }

    /// Signed distance from the plane.
    pub fn height(&self, p: &Point) -> f64 {
        self.normal.dot(&(p - self.base))
    }

    /// Classifies the orthogonal projection of `p` onto the plane.
    pub fn containment(&self, p: &Point) -> Containment {
        let d = p - self.base;
        let (x, y) = (self.u.dot(&d), self.v.dot(&d));
        let n = self.flat.len();
        let mut inside = false;
        for k in 0..n {
            let [ax, ay] = self.flat[k];
            let [bx, by] = self.flat[(k + 1) % n];
            let (ex, ey) = (bx - ax, by - ay);
            let len2 = ex * ex + ey * ey;
            let t = (((x - ax) * ex + (y - ay) * ey) / len2).clamp(0.0, 1.0);
            let (cx, cy) = (ax + t * ex - x, ay + t * ey - y);
            if libm::sqrt(cx * cx + cy * cy) < TOL {
                return Containment::Boundary;
            }
            if (ay > y) != (by > y) && x < ax + (y - ay) * ex / ey {
                inside = !inside;
            }
        }
        if inside {
            Containment::Inside
        } else {
            Containment::Outside
        }
    }
}

/// Whether a half-edge leaves its vertex along or against the edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Away,
    Toward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PunctureHalfEdge {
    pub edge: usize,
    pub direction: Direction,
    /// +1 above the surface, -1 below, 0 tangent.
    pub kappa: i8,
}

impl PunctureHalfEdge {
    pub fn half_edge(&self) -> HalfEdge {
        let end = match self.direction {
            Direction::Away => EdgeEnd::Start,
            Direction::Toward => EdgeEnd::End,
        };
        HalfEdge { edge: self.edge, end }
    }
}

/// A vertex of the subdivided graph lying on the open patch.
#[derive(Clone, Debug, PartialEq)]
pub struct Puncture {
    pub vertex: usize,
    pub point: Point,
    pub half_edges: Vec<PunctureHalfEdge>,
}

/// Result of intersecting a graph with a surface.
#[derive(Clone, Debug)]
pub struct Punctured {
    /// The graph subdivided so that every puncture is a vertex.
    pub graph: Arc<EmbeddedGraph>,
    pub refinement: RefinementMap,
    pub punctures: Vec<Puncture>,
}

/// Side of the surface a half-edge leaves to.
pub fn kappa(g: &EmbeddedGraph, s: &Surface, he: HalfEdge) -> i8 {
    sign_with_tolerance(s.normal().dot(&g.outgoing_tangent(he)), TOL)
}

/// Subdivides `g` at its transverse crossings with `s` and lists every
/// vertex on the patch with the sides of its half-edges.
pub fn punctures(g: &Arc<EmbeddedGraph>, s: &Surface) -> Result<Punctured, GraphError> {
    let on_patch = |edge: usize, p: &Point| -> Result<bool, GraphError> {
        match s.containment(p) {
            Containment::Inside => Ok(true),
            Containment::Outside => Ok(false),
            Containment::Boundary => Err(GraphError::BoundaryGrazing { edge, point: (*p).into() }),
        }
    };
    let mut cuts = vec![Vec::new(); g.num_edges()];
    for (id, e) in g.edges().iter().enumerate() {
        let p = &e.polyline;
        let h: Vec<f64> = p.iter().map(|x| s.height(x)).collect();
        let flat = |i: usize| h[i].abs() < TOL;
        for k in 0..p.len() - 1 {
            if !flat(k) && !flat(k + 1) && (h[k] > 0.0) != (h[k + 1] > 0.0) {
                let t = h[k] / (h[k] - h[k + 1]);
                let x = p[k] + (p[k + 1] - p[k]) * t;
                if on_patch(id, &x)? {
                    cuts[id].push(k as f64 + t);
                }
            }
        }
        for i in 0..p.len() {
            if !flat(i) {
                continue;
            }
            let interior = i > 0 && i + 1 < p.len();
            let inside = on_patch(id, &p[i])?;
            if interior && inside && !(flat(i - 1) && flat(i + 1)) {
                cuts[id].push(i as f64);
            }
        }
    }
    let refinement = if cuts.iter().all(Vec::is_empty) {
        RefinementMap::identity(g)
    } else {
        let (fine, chains) = split_edges(g, &cuts);
        RefinementMap {
            coarse: g.clone(),
            fine: Arc::new(fine),
            chains: chains.into_iter().map(|c| c.into_iter().map(|id| (id, Orientation::Forward)).collect()).collect(),
        }
    };
    let graph = refinement.fine.clone();
    let mut out = Vec::new();
    for (v, x) in graph.vertices().iter().enumerate() {
        if s.height(x).abs() >= TOL {
            continue;
        }
        let hes = graph.half_edges_at(v);
        if hes.is_empty() || s.containment(x) != Containment::Inside {
            continue;
        }
        let half_edges = hes
            .into_iter()
            .map(|he| PunctureHalfEdge {
                edge: he.edge,
                direction: match he.end {
                    EdgeEnd::Start => Direction::Away,
                    EdgeEnd::End => Direction::Toward,
                },
                kappa: kappa(&graph, s, he),
            })
            .collect();
        out.push(Puncture { vertex: v, point: *x, half_edges });
    }
    Ok(Punctured { graph, refinement, punctures: out })
}

/// Sign of the determinant of the outgoing unit tangents of three
/// half-edges at `v`; 0 when they are linearly dependent.
pub fn orientation_factor(g: &EmbeddedGraph, v: usize, hes: [HalfEdge; 3]) -> Result<i8, GraphError> {
    for he in hes {
        if he.edge >= g.num_edges() || g.vertex_of(he) != v {
            return Err(GraphError::NotIncident { vertex: v, edge: he.edge });
        }
    }
    let [a, b, c] = hes.map(|he| g.outgoing_tangent(he));
    Ok(sign_with_tolerance(a.dot(&b.cross(&c)), TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::embedded::Edge;

    fn pt(x: f64, y: f64, z: f64) -> Point {
        Point::new(x, y, z)
    }

    fn disk() -> Surface {
        Surface::regular_polygon(pt(0., 0., 0.), pt(0., 0., 1.), 1.0, 32).unwrap()
    }

    #[test]
    fn vertical_edge_crosses_disk_once() {
        let g = Arc::new(EmbeddedGraph::straight(vec![pt(0., 0., -1.), pt(0., 0., 1.)], &[(0, 1)]).unwrap());
        let p = punctures(&g, &disk()).unwrap();
        assert_eq!(p.punctures.len(), 1);
        let pc = &p.punctures[0];
        assert!(pc.point.norm() < 1e-15);
        let by_dir = |d| pc.half_edges.iter().find(|h| h.direction == d).unwrap().kappa;
        // Piece 0 runs from below up to the puncture; piece 1 leaves it upward.
        assert_eq!(by_dir(Direction::Toward), -1);
        assert_eq!(by_dir(Direction::Away), 1);
        p.refinement.check().unwrap();
        assert_eq!(p.graph.num_edges(), 2);
    }

    #[test]
    fn in_plane_edge_is_tangent() {
        let g = Arc::new(EmbeddedGraph::straight(vec![pt(-0.5, 0., 0.), pt(0.5, 0., 0.)], &[(0, 1)]).unwrap());
        let p = punctures(&g, &disk()).unwrap();
        assert!(Arc::ptr_eq(&p.graph, &g));
        assert_eq!(p.punctures.len(), 2);
        assert!(p.punctures.iter().flat_map(|x| &x.half_edges).all(|h| h.kappa == 0));
    }

    #[test]
    fn graph_above_surface_has_no_punctures() {
        let g = Arc::new(EmbeddedGraph::straight(vec![pt(0., 0., 1.), pt(1., 0., 2.)], &[(0, 1)]).unwrap());
        let p = punctures(&g, &disk()).unwrap();
        assert!(p.punctures.is_empty());
        assert!(p.refinement.is_identity());
    }

    #[test]
    fn crossing_outside_polygon_is_ignored_and_grazing_is_rejected() {
        let g = Arc::new(EmbeddedGraph::straight(vec![pt(3., 0., -1.), pt(3., 0., 1.)], &[(0, 1)]).unwrap());
        assert!(punctures(&g, &disk()).unwrap().punctures.is_empty());
        let sq = Surface::square_z([-1., 1.], [-1., 1.], 0.0, true).unwrap();
        let g = Arc::new(EmbeddedGraph::straight(vec![pt(1., 0., -1.), pt(1., 0., 1.)], &[(0, 1)]).unwrap());
        assert!(matches!(punctures(&g, &sq), Err(GraphError::BoundaryGrazing { edge: 0, .. })));
    }

    #[test]
    fn reversing_normal_flips_kappa() {
        let vs = vec![pt(0., 0., 0.), pt(0.3, 0.1, 1.), pt(-0.2, 0.4, -1.), pt(0.5, 0., 0.)];
        let g = Arc::new(EmbeddedGraph::straight(vs, &[(0, 1), (2, 0), (0, 3)]).unwrap());
        let s = disk();
        let a = punctures(&g, &s).unwrap();
        let b = punctures(&g, &s.reversed()).unwrap();
        assert_eq!(a.punctures.len(), 2);
        assert_eq!(a.punctures[0].vertex, 0);
        let ka: Vec<i8> = a.punctures[0].half_edges.iter().map(|h| h.kappa).collect();
        let kb: Vec<i8> = b.punctures[0].half_edges.iter().map(|h| -h.kappa).collect();
        assert_eq!(ka, [1, -1, 0]);
        assert_eq!(ka, kb);
    }

    #[test]
    fn polyline_joint_on_surface_is_a_puncture() {
        let vs = vec![pt(0., 0., -1.), pt(0.2, 0., 1.)];
        let poly = vec![pt(0., 0., -1.), pt(0.1, 0., 0.), pt(0.2, 0., 1.)];
        let g = Arc::new(EmbeddedGraph::new(vs, vec![Edge { start: 0, end: 1, polyline: poly }]).unwrap());
        let p = punctures(&g, &disk()).unwrap();
        assert_eq!(p.punctures.len(), 1);
        assert!((p.punctures[0].point - pt(0.1, 0., 0.)).norm() < 1e-15);
        let sum: i8 = p.punctures[0].half_edges.iter().map(|h| h.kappa).sum();
        assert_eq!(sum, 0);
    }

    #[test]
    fn orientation_factor_cases() {
        let vs = vec![pt(0., 0., 0.), pt(1., 0., 0.), pt(0., 1., 0.), pt(0., 0., 1.), pt(-1., -1., 0.)];
        let g = EmbeddedGraph::straight(vs, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let he = |e| HalfEdge { edge: e, end: EdgeEnd::Start };
        assert_eq!(orientation_factor(&g, 0, [he(0), he(1), he(2)]), Ok(1));
        assert_eq!(orientation_factor(&g, 0, [he(1), he(0), he(2)]), Ok(-1));
        assert_eq!(orientation_factor(&g, 0, [he(0), he(1), he(3)]), Ok(0));
        assert!(matches!(
            orientation_factor(&g, 1, [he(0), he(1), he(2)]),
            Err(GraphError::NotIncident { vertex: 1, .. })
        ));
    }
}
