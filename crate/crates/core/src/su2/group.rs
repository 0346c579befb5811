use core::ops::{Add, Mul, Neg, Sub};

use crate::C64;

/// A 2×2 complex matrix in row-major order.
pub type Mat2 = [[C64; 2]; 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub const fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// Levi-Civita symbol on `{0, 1, 2}`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

pub fn pauli(axis: Axis) -> Mat2 {
    match axis {
        Axis::X => [[ZERO, ONE], [ONE, ZERO]],
        Axis::Y => [[ZERO, -I], [I, ZERO]],
        Axis::Z => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

/// `τ_i = σ_i / (2i)`; satisfies `[τ_i, τ_j] = ε_ijk τ_k`.
pub fn tau(axis: Axis) -> Mat2 {
    let s = pauli(axis);
    let f = C64::new(0.0, -0.5);
    [[s[0][0] * f, s[0][1] * f], [s[1][0] * f, s[1][1] * f]]
}

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

pub fn mat2_sub(a: &Mat2, b: &Mat2) -> Mat2 {
    [[a[0][0] - b[0][0], a[0][1] - b[0][1]], [a[1][0] - b[1][0], a[1][1] - b[1][1]]]
}

/// Max-entry distance between two 2×2 matrices.
pub fn mat2_distance(a: &Mat2, b: &Mat2) -> f64 {
    let d = mat2_sub(a, b);
    d.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

/// An element `v = vⁱ τ_i` of su(2).
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct LieVector(pub [f64; 3]);

impl LieVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        LieVector([x, y, z])
    }

    pub const fn zero() -> Self {
        LieVector([0.0; 3])
    }

    pub fn basis(axis: Axis) -> Self {
        let mut v = [0.0; 3];
        v[axis.index()] = 1.0;
        LieVector(v)
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.dot(self))
    }

    pub fn dot(&self, other: &LieVector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Lie bracket; in this basis it is the cross product.
    pub fn bracket(&self, other: &LieVector) -> LieVector {
        let (a, b) = (self.0, other.0);
        LieVector([a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]])
    }

    pub fn scale(&self, s: f64) -> LieVector {
        LieVector(self.0.map(|x| x * s))
    }

    pub fn to_matrix(&self) -> Mat2 {
        let mut out = [[ZERO; 2]; 2];
        for axis in Axis::ALL {
            let t = tau(axis);
            let c = self.0[axis.index()];
            for r in 0..2 {
                for k in 0..2 {
                    out[r][k] += t[r][k] * c;
                }
            }
        }
        out
    }

    /// Components of the traceless anti-Hermitian part of `m`, using
    /// `tr(τ_i τ_j) = -δ_ij / 2`.
    pub fn from_matrix(m: &Mat2) -> LieVector {
        let mut v = [0.0; 3];
        for axis in Axis::ALL {
            let prod = mat2_mul(m, &tau(axis));
            v[axis.index()] = -2.0 * (prod[0][0] + prod[1][1]).re;
        }
        LieVector(v)
    }

    /// Group exponential `exp(vⁱ τ_i)`.
    pub fn exp(&self) -> GroupElement {
        // (v·τ)² = -|v|²/4, so exp(v·τ) = cos(|v|/2) + (2/|v|) sin(|v|/2) v·τ.
        let n = self.norm();
        let half = 0.5 * n;
        let (c, s) = (libm::cos(half), if n < 1e-300 { 0.5 } else { libm::sin(half) / n });
        // v·τ = -(i/2)(x σ_x + y σ_y + z σ_z)
        let [x, y, z] = self.0;
        let alpha = C64::new(c, -s * z);
        let beta = C64::new(-s * y, -s * x);
        GroupElement { alpha, beta }
    }
}

impl Add for LieVector {
    type Output = LieVector;
    fn add(self, rhs: LieVector) -> LieVector {
        LieVector([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl Sub for LieVector {
    type Output = LieVector;
    fn sub(self, rhs: LieVector) -> LieVector {
        LieVector([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1], self.0[2] - rhs.0[2]])
    }
}

impl Neg for LieVector {
    type Output = LieVector;
    fn neg(self) -> LieVector {
        self.scale(-1.0)
    }
}

/// An SU(2) element `[[α, β], [-β̄, ᾱ]]` with `|α|² + |β|² = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement {
    alpha: C64,
    beta: C64,
}

impl GroupElement {
    pub const fn identity() -> Self {
        GroupElement { alpha: ONE, beta: ZERO }
    }

    /// Builds `[[α, β], [-β̄, ᾱ]]`, rescaling onto the unit sphere.
    pub fn from_cayley_klein(alpha: C64, beta: C64) -> Self {
        GroupElement { alpha, beta }.renormalized()
    }

    /// Nearest SU(2) element to an approximately special-unitary matrix.
    pub fn from_matrix(m: &Mat2) -> Self {
        let alpha = (m[0][0] + m[1][1].conj()) * 0.5;
        let beta = (m[0][1] - m[1][0].conj()) * 0.5;
        Self::from_cayley_klein(alpha, beta)
    }

    /// Unit quaternion `(q0, q1, q2, q3)` for `q0 + i(q1 σ_x + q2 σ_y + q3 σ_z)`.
    pub fn from_quaternion(q: [f64; 4]) -> Self {
        Self::from_cayley_klein(C64::new(q[0], q[3]), C64::new(q[2], q[1]))
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn beta(&self) -> C64 {
        self.beta
    }

    pub fn entries(&self) -> Mat2 {
        [[self.alpha, self.beta], [-self.beta.conj(), self.alpha.conj()]]
    }

    pub fn inverse(&self) -> Self {
        GroupElement { alpha: self.alpha.conj(), beta: -self.beta }
    }

    pub fn trace(&self) -> f64 {
        2.0 * self.alpha.re
    }

    pub fn determinant(&self) -> C64 {
        let m = self.entries();
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Max-entry deviation of `g†g` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let m = self.entries();
        let adj = [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]];
        mat2_distance(&mat2_mul(&adj, &m), &GroupElement::identity().entries())
    }

    pub fn distance(&self, other: &GroupElement) -> f64 {
        mat2_distance(&self.entries(), &other.entries())
    }

    fn renormalized(self) -> Self {
        let n = libm::sqrt(self.alpha.norm_sqr() + self.beta.norm_sqr());
        GroupElement { alpha: self.alpha / n, beta: self.beta / n }
    }
}

impl Default for GroupElement {
    fn default() -> Self {
        Self::identity()
    }
}

/// Matrix product, renormalized onto SU(2).
pub fn multiply(a: &GroupElement, b: &GroupElement) -> GroupElement {
    let alpha = a.alpha * b.alpha - a.beta * b.beta.conj();
    let beta = a.alpha * b.beta + a.beta * b.alpha.conj();
    GroupElement { alpha, beta }.renormalized()
}

impl Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: GroupElement) -> GroupElement {
        multiply(&self, &rhs)
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        multiply(self, rhs)
    }
}
