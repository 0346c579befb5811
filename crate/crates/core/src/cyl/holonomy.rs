use alloc::sync::Arc;

use super::CylError;
use crate::graph::Point;
use crate::su2::{wigner, Axis, GroupElement, HalfInt, LieVector, Mat2};
use crate::C64;

/// Regularity promised by a connection callback.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothness {
    Constant,
    Polynomial,
    Smooth,
}

type ComponentsFn = dyn Fn(&Point) -> [[f64; 3]; 3] + Send + Sync;

/// An su(2)-valued one-form `A = A_aⁱ τ_i dxᵃ` given by its components.
///
/// Storing components makes `A(x)(u) = uᵃ A_aⁱ τ_i` linear in `u` by
/// construction.
#[derive(Clone)]
pub struct Connection {
    components: Arc<ComponentsFn>,
    smoothness: Smoothness,
}

impl core::fmt::Debug for Connection {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Connection").field("smoothness", &self.smoothness).finish_non_exhaustive()
    }
}

impl Connection {
    /// `components(x)[a][i] = A_aⁱ(x)`.
    pub fn new(components: impl Fn(&Point) -> [[f64; 3]; 3] + Send + Sync + 'static, smoothness: Smoothness) -> Self {
        Connection { components: Arc::new(components), smoothness }
    }

    pub fn zero() -> Self {
        Self::constant([[0.0; 3]; 3])
    }

    pub fn constant(components: [[f64; 3]; 3]) -> Self {
        Self::new(move |_| components, Smoothness::Constant)
    }

    /// `A_aⁱ(x) = c_aⁱ + Σ_b l_{ab}ⁱ x^b`, with `linear[a][b][i]`.
    pub fn affine(constant: [[f64; 3]; 3], linear: [[[f64; 3]; 3]; 3]) -> Self {
        Self::new(
            move |x| {
                let mut out = constant;
                for (a, row) in out.iter_mut().enumerate() {
                    for (i, v) in row.iter_mut().enumerate() {
                        *v += (0..3).map(|b| linear[a][b][i] * x[b]).sum::<f64>();
                    }
                }
                out
            },
            Smoothness::Polynomial,
        )
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    pub fn components(&self, x: &Point) -> [[f64; 3]; 3] {
        (self.components)(x)
    }

    /// `A(x)(u)`.
    pub fn evaluate(&self, x: &Point, u: &Point) -> LieVector {
        let c = self.components(x);
        let mut v = [0.0; 3];
        for (a, row) in c.iter().enumerate() {
            for (i, comp) in row.iter().enumerate() {
                v[i] += u[a] * comp;
            }
        }
        LieVector(v)
    }
}

type GaugeFn = dyn Fn(&Point) -> GroupElement + Send + Sync;

/// A gauge transformation `x ↦ g(x)`.
#[derive(Clone)]
pub struct GaugeTransformation {
    map: Arc<GaugeFn>,
}

impl core::fmt::Debug for GaugeTransformation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("GaugeTransformation").finish_non_exhaustive()
    }
}

impl GaugeTransformation {
    pub fn new(map: impl Fn(&Point) -> GroupElement + Send + Sync + 'static) -> Self {
        GaugeTransformation { map: Arc::new(map) }
    }

    pub fn at(&self, x: &Point) -> GroupElement {
        (self.map)(x)
    }
}

/// Step of the central differences used to differentiate gauge maps.
const GAUGE_FD_STEP: f64 = 1e-5;

/// `A' = g A g⁻¹ - (dg) g⁻¹`, the connection whose holonomies are
/// `g(q) h g(p)⁻¹`. Derivatives of `g` are taken by central differences.
pub fn gauge_transformed(a: &Connection, g: &GaugeTransformation) -> Connection {
    let a = a.clone();
    let g = g.clone();
    Connection::new(
        move |x| {
            let gx = g.at(x).entries();
            let ginv = g.at(x).inverse().entries();
            let comps = a.components(x);
            let mut out = [[0.0; 3]; 3];
            for (dir, row) in out.iter_mut().enumerate() {
                let mut e = Point::zeros();
                e[dir] = GAUGE_FD_STEP;
                let plus = g.at(&(x + e)).entries();
                let minus = g.at(&(x - e)).entries();
                let dg = mat_lin(&plus, &minus, 1.0 / (2.0 * GAUGE_FD_STEP), -1.0 / (2.0 * GAUGE_FD_STEP));
                let adj = mul(&mul(&gx, &LieVector(comps[dir]).to_matrix()), &ginv);
                let m = mat_lin(&adj, &mul(&dg, &ginv), 1.0, -1.0);
                *row = LieVector::from_matrix(&m).0;
            }
            out
        },
        Smoothness::Smooth,
    )
}

fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    crate::su2::mat2_mul(a, b)
}

fn mat_lin(a: &Mat2, b: &Mat2, x: f64, y: f64) -> Mat2 {
    let mut out = *a;
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][c] * x + b[r][c] * y;
        }
    }
    out
}

fn mat_distance(a: &Mat2, b: &Mat2) -> f64 {
    crate::su2::mat2_distance(a, b)
}

/// Product of midpoint steps with `n` substeps per polyline segment.
fn midpoint_product(a: &Connection, polyline: &[Point], n: usize) -> Mat2 {
    let mut h = GroupElement::identity().entries();
    for w in polyline.windows(2) {
        let dx = (w[1] - w[0]) / n as f64;
        for k in 0..n {
            let mid = w[0] + dx * (k as f64 + 0.5);
            let step = a.evaluate(&mid, &dx).scale(-1.0).exp().entries();
            h = mul(&step, &h);
        }
    }
    h
}

/// Largest total number of integration steps.
pub const MAX_STEPS: usize = 1 << 20;

/// Path-ordered exponential `𝒫 exp(-∫ A)` along a polyline, with later
/// points acting from the left: the holonomy of `e₂∘e₁` is `h(e₂) h(e₁)`.
///
/// Midpoint matrix-exponential steps are halved, with Richardson
/// extrapolation, until successive extrapolants agree to `1e-10`.
pub fn holonomy(a: &Connection, polyline: &[Point]) -> Result<GroupElement, CylError> {
    if polyline.len() < 2 || polyline.windows(2).any(|w| (w[1] - w[0]).norm() == 0.0) {
        return Err(CylError::DegeneratePath);
    }
    let segments = polyline.len() - 1;
    let mut n = 1;
    let mut coarse = midpoint_product(a, polyline, n);
    let mut last: Option<Mat2> = None;
    loop {
        n *= 2;
        if n * segments > MAX_STEPS {
            return Err(CylError::HolonomyNotConverged { steps: n * segments });
        }
        let fine = midpoint_product(a, polyline, n);
        let extrapolated = mat_lin(&fine, &coarse, 4.0 / 3.0, -1.0 / 3.0);
        if mat_distance(&fine, &coarse) == 0.0 {
            return Ok(GroupElement::from_matrix(&fine));
        }
        if let Some(prev) = last {
            if mat_distance(&extrapolated, &prev) < 1e-10 {
                return Ok(GroupElement::from_matrix(&extrapolated));
            }
        }
        last = Some(extrapolated);
        coarse = fine;
    }
}

/// `g(q) h g(p)⁻¹` for a path from `p` to `q`.
pub fn gauge_transform_holonomy(h: &GroupElement, g_p: &GroupElement, g_q: &GroupElement) -> GroupElement {
    *g_q * *h * g_p.inverse()
}

/// Trace of the spin-`j` holonomy around a closed polyline.
pub fn wilson_loop(j: HalfInt, polyline: &[Point], a: &Connection) -> Result<C64, CylError> {
    if polyline.len() < 2 || (polyline[0] - polyline[polyline.len() - 1]).norm() > 1e-12 {
        return Err(CylError::NotClosed);
    }
    Ok(wigner(j, &holonomy(a, polyline)?).trace())
}

/// The constant connection `A = κ τ_axis dx^dir`.
pub fn constant_along(kappa: f64, axis: Axis, dir: usize) -> Connection {
    let mut c = [[0.0; 3]; 3];
    c[dir][axis.index()] = kappa;
    Connection::constant(c)
}
