//! Segment geometry in the chart.

use nalgebra::Vector3;

pub type Point = Vector3<f64>;

/// Geometric tolerance for coincidence tests.
pub const TOL: f64 = 1e-9;

/// How two closed segments `p + s·(q - p)` and `a + t·(b - a)` meet.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Contact {
    None,
    Point {
        s: f64,
        t: f64,
        point: Point,
    },
    /// Collinear overlap of positive length; `t[k]` is the parameter on the
    /// second segment of the point at `s[k]` on the first.
    Overlap {
        s: [f64; 2],
        t: [f64; 2],
    },
}

fn clamp01(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// Parameter of the point of segment `p q` closest to `x`, and the distance.
pub fn project_onto_segment(x: &Point, p: &Point, q: &Point) -> (f64, f64) {
    let d = q - p;
    let len2 = d.norm_squared();
    let s = if len2 == 0.0 { 0.0 } else { clamp01((x - p).dot(&d) / len2) };
    (s, (p + d * s - x).norm())
}

/// Closest-point contact between two segments (after Ericson,
/// *Real-Time Collision Detection*, §5.1.9), with collinear overlaps
/// reported separately.
pub fn segment_contact(p: &Point, q: &Point, a: &Point, b: &Point, tol: f64) -> Contact {
    let d1 = q - p;
    let d2 = b - a;
    let r = p - a;
    let aa = d1.norm_squared();
    let ee = d2.norm_squared();
    let f = d2.dot(&r);
    let cross = d1.cross(&d2).norm();
    if cross <= 1e-12 * libm::sqrt(aa * ee) {
        return parallel_contact(p, q, a, b, tol);
    }
    let c = d1.dot(&r);
    let bb = d1.dot(&d2);
    let denom = aa * ee - bb * bb;
    let mut s = clamp01((bb * f - c * ee) / denom);
    let mut t = (bb * s + f) / ee;
    if t < 0.0 {
        t = 0.0;
        s = clamp01(-c / aa);
    } else if t > 1.0 {
        t = 1.0;
        s = clamp01((bb - c) / aa);
    }
    let c1 = p + d1 * s;
    let c2 = a + d2 * t;
    if (c1 - c2).norm() < tol {
        Contact::Point { s, t, point: (c1 + c2) * 0.5 }
    } else {
        Contact::None
    }
}

fn parallel_contact(p: &Point, q: &Point, a: &Point, b: &Point, tol: f64) -> Contact {
    let d1 = q - p;
    let len2 = d1.norm_squared();
    let param = |x: &Point| (x - p).dot(&d1) / len2;
    // Distance from a to the carrier line of p q.
    let ta = param(a);
    if (p + d1 * ta - a).norm() >= tol {
        return Contact::None;
    }
    let tb = param(b);
    let lo = ta.min(tb).max(0.0);
    let hi = ta.max(tb).min(1.0);
    let len = libm::sqrt(len2);
    let back = |s: f64| project_onto_segment(&(p + d1 * s), a, b).0;
    if (hi - lo) * len > tol {
        Contact::Overlap { s: [lo, hi], t: [back(lo), back(hi)] }
    } else if (lo - hi) * len < tol {
        let s = clamp01(0.5 * (lo + hi));
        Contact::Point { s, t: back(s), point: p + d1 * s }
    } else {
        Contact::None
    }
}

/// Whether the polylines trace the same curve (same ends, every vertex of
/// each within `tol` of the other).
pub fn same_curve(a: &[Point], b: &[Point], tol: f64) -> bool {
    let ends = (a[0] - b[0]).norm() < tol && (a[a.len() - 1] - b[b.len() - 1]).norm() < tol;
    ends && a.iter().all(|x| distance_to_polyline(x, b) < tol) && b.iter().all(|x| distance_to_polyline(x, a) < tol)
}

pub fn distance_to_polyline(x: &Point, poly: &[Point]) -> f64 {
    poly.windows(2).map(|w| project_onto_segment(x, &w[0], &w[1]).1).fold(f64::INFINITY, f64::min)
}

/// Sign of `x` with a dead zone `|x| < tol` mapped to 0.
pub fn sign_with_tolerance(x: f64, tol: f64) -> i8 {
    if x.abs() < tol {
        0
    } else if x > 0.0 {
        1
    } else {
        -1
    }
}
