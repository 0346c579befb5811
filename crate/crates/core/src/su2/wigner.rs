//! Irreducible representations and the invariant derivative operators.
//!
//! The spin-`j` representation is realized on the `2j`-fold symmetric power
//! of the fundamental representation, with orthonormal basis
//! `|j m⟩ ∝ e₊^{j+m} e₋^{j-m}` ordered `m = j, j-1, …, -j`. In this basis
//! the spin matrices carry the Condon–Shortley phases and `D^{1/2}(g) = g`.

use alloc::vec::Vec;

use super::group::{Axis, GroupElement, LieVector};
use super::HalfInt;
use crate::linalg::{zeros, CMatrix};
use crate::C64;

/// `D^{(j)}(g)`, indexed by matrix positions of `m = j, …, -j`.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerMatrix {
    pub j: HalfInt,
    pub entries: CMatrix,
}

impl WignerMatrix {
    /// `D^{(j)}_{m n}` by magnetic labels.
    pub fn get(&self, m: HalfInt, n: HalfInt) -> C64 {
        self.entries[(self.j.index_of(m), self.j.index_of(n))]
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }
}

pub(crate) fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// The `(2j+1)`-dimensional representation matrix of `g`.
pub fn wigner(j: HalfInt, g: &GroupElement) -> WignerMatrix {
    assert!(j.is_spin(), "wigner: negative spin {j}");
    let d = j.dim();
    let u = g.entries();
    let entries = CMatrix::from_fn(d, d, |r, s| entry_at(j, r, s, &u));
    WignerMatrix { j, entries }
}

/// The single entry `D^{(j)}_{mn}(g)`.
pub fn wigner_entry(j: HalfInt, m: HalfInt, n: HalfInt, g: &GroupElement) -> C64 {
    entry_at(j, j.index_of(m), j.index_of(n), &g.entries())
}

fn entry_at(j: HalfInt, r: usize, s: usize, u: &[[C64; 2]; 2]) -> C64 {
    let t = j.twice() as u32;
    let (r, s) = (r as u32, s as u32);
    let (a, b, c, dd) = (u[0][0], u[0][1], u[1][0], u[1][1]);
    // g e₊ = a e₊ + c e₋, g e₋ = b e₊ + d e₋. Column s holds the image of
    // e₊^{t-s} e₋^{s}; row r collects the coefficient of e₊^{t-r} e₋^{r}.
    let (p_in, q_in) = (t - s, s);
    let p_out = t - r;
    let mut sum = C64::new(0.0, 0.0);
    // k factors e₊ from (a e₊ + c e₋)^{p_in}, p_out - k from (b e₊ + d e₋)^{q_in}
    for k in 0..=p_in.min(p_out) {
        let l = p_out - k;
        if l > q_in {
            continue;
        }
        let coeff = binomial(p_in, k) * binomial(q_in, l);
        sum += a.powu(k) * c.powu(p_in - k) * b.powu(l) * dd.powu(q_in - l) * coeff;
    }
    let norm = libm::sqrt(factorial(p_out) * factorial(r) / (factorial(p_in) * factorial(q_in)));
    sum * norm
}

/// Hermitian spin matrix `J_i` of the spin-`j` representation.
pub fn spin_matrix(j: HalfInt, axis: Axis) -> CMatrix {
    let d = j.dim();
    let jf = j.as_f64();
    let mut out = zeros(d, d);
    // J₊|m⟩ = √((j-m)(j+m+1)) |m+1⟩; index k ↔ m = j - k, so m+1 sits at k-1.
    let raise = |k: usize| {
        let m = j.magnetic_at(k).as_f64();
        libm::sqrt((jf - m) * (jf + m + 1.0))
    };
    match axis {
        Axis::Z => {
            for k in 0..d {
                out[(k, k)] = C64::new(j.magnetic_at(k).as_f64(), 0.0);
            }
        }
        Axis::X => {
            for k in 1..d {
                let v = C64::new(0.5 * raise(k), 0.0);
                out[(k - 1, k)] = v;
                out[(k, k - 1)] = v;
            }
        }
        Axis::Y => {
            for k in 1..d {
                let v = 0.5 * raise(k);
                out[(k - 1, k)] = C64::new(0.0, -v);
                out[(k, k - 1)] = C64::new(0.0, v);
            }
        }
    }
    out
}

/// Representation of `τ_i` on spin `j`: `T_i = -i J_i`, so that
/// `[T_i, T_j] = ε_ijk T_k`.
pub fn lie_generator(j: HalfInt, axis: Axis) -> CMatrix {
    spin_matrix(j, axis) * C64::new(0.0, -1.0)
}

/// `Σ vⁱ T_i` on spin `j`.
pub fn represent(j: HalfInt, v: &LieVector) -> CMatrix {
    let mut out = zeros(j.dim(), j.dim());
    for axis in Axis::ALL {
        out += lie_generator(j, axis) * C64::new(v.0[axis.index()], 0.0);
    }
    out
}

/// Which matrix index of `D^{(j)}_{mn}` an invariant operator acts on.
///
/// `Left` is the left-invariant family, acting on the column index `n`; it
/// belongs to the vertex an edge starts at. `Right` is the right-invariant
/// family, acting on the row index `m`; it belongs to the vertex an edge
/// ends at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Matrix of the invariant vector field along `τ_i`, acting on the index
/// selected by `side` of the coefficient array of `D^{(j)}`.
///
/// `Left`: `f(g) ↦ d/dt f(g e^{tτ_i})`, which acts on the column index by
/// `T_i`. `Right`: `f(g) ↦ d/dt f(e^{-tτ_i} g)`, which acts on the row index
/// by `conj(T_i)`. Both families satisfy `[X_i, X_j] = ε_ijk X_k`.
pub fn invariant_vector_field(j: HalfInt, axis: Axis, side: Side) -> CMatrix {
    let t = lie_generator(j, axis);
    match side {
        Side::Left => t,
        Side::Right => t.map(|z| z.conj()),
    }
}

/// Hermitian momentum operator `Ĵ_i = i X_i` on the index selected by `side`.
///
/// `Σ_i Ĵ_i² = j(j+1)` on either side, and left and right operators act on
/// different indices so they commute.
pub fn invariant_generator(j: HalfInt, axis: Axis, side: Side) -> CMatrix {
    let s = spin_matrix(j, axis);
    match side {
        Side::Left => s,
        Side::Right => -s.map(|z| z.conj()),
    }
}

/// `Σ fⁱ Ĵ_i` for a real smearing vector.
pub fn smeared_generator(j: HalfInt, f: &LieVector, side: Side) -> CMatrix {
    let mut out = zeros(j.dim(), j.dim());
    for axis in Axis::ALL {
        let c = f.0[axis.index()];
        if c != 0.0 {
            out += invariant_generator(j, axis, side) * C64::new(c, 0.0);
        }
    }
    out
}

/// The real orthogonal matrix `W = D^{(j)}(exp(π τ_y))`.
///
/// It intertwines the representation with its complex conjugate:
/// `conj(D(g)) = W D(g) Wᵀ`, equivalently `-conj(J_i) = W J_i Wᵀ`.
pub fn conjugation_intertwiner(j: HalfInt) -> CMatrix {
    let g = LieVector::new(0.0, core::f64::consts::PI, 0.0).exp();
    let mut w = wigner(j, &g).entries;
    // Exact up to rounding: the only nonzero entries are ±1 on the antidiagonal.
    for z in w.iter_mut() {
        *z = C64::new(libm::round(z.re), 0.0);
    }
    w
}

/// Signs `s_m` with `W |m⟩ = s_m |-m⟩`, indexed by matrix position of `m`.
pub fn conjugation_signs(j: HalfInt) -> Vec<f64> {
    let w = conjugation_intertwiner(j);
    let d = j.dim();
    (0..d).map(|k| w[(d - 1 - k, k)].re).collect()
}
