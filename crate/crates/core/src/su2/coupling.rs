//! Clebsch–Gordan coupling and invariant subspaces of tensor products.

use alloc::vec;
use alloc::vec::Vec;

use super::wigner::{conjugation_intertwiner, factorial};
use super::{HalfInt, Side};
use crate::linalg::{embed, identity, kron, orthonormalize_columns, zeros, CMatrix};
use crate::C64;

/// `⟨j1 m1; j2 m2 | J M⟩` in the Condon–Shortley convention (Racah formula).
pub fn clebsch_gordan_coefficient(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> f64 {
    if m1 + m2 != m || !j1.admits(m1) || !j2.admits(m2) || !j.admits(m) {
        return 0.0;
    }
    let (a, b, c) = (j1.twice(), j2.twice(), j.twice());
    if c < (a - b).abs() || c > a + b || (a + b + c) % 2 != 0 {
        return 0.0;
    }
    // Every argument below is an integer; `h` halves a twice-value sum.
    let h = |t: i32| -> i32 { t / 2 };
    let f = |t: i32| factorial(t as u32);
    let (m1, m2, m) = (m1.twice(), m2.twice(), m.twice());
    let pre = libm::sqrt(f64::from(c + 1) * f(h(c + a - b)) * f(h(c - a + b)) * f(h(a + b - c)) / f(h(a + b + c) + 1))
        * libm::sqrt(f(h(c + m)) * f(h(c - m)) * f(h(a - m1)) * f(h(a + m1)) * f(h(b - m2)) * f(h(b + m2)));
    let mut sum = 0.0;
    for k in 0.. {
        let args = [h(a + b - c) - k, h(a - m1) - k, h(b + m2) - k, h(c - b + m1) + k, h(c - a - m2) + k];
        if args[0] < 0 || args[1] < 0 || args[2] < 0 {
            break;
        }
        if args[3] < 0 || args[4] < 0 {
            continue;
        }
        let denom = f(k) * args.iter().map(|&x| f(x)).product::<f64>();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / denom;
    }
    pre * sum
}

/// One irreducible summand `J` of `j1 ⊗ j2`.
#[derive(Clone, Debug)]
pub struct CouplingBlock {
    pub j: HalfInt,
    /// Isometry from spin `J` into `j1 ⊗ j2`: rows are the product index
    /// `k1·(2j2+1) + k2`, columns the matrix index of `M`.
    pub embedding: CMatrix,
}

/// Decomposition of `j1 ⊗ j2` into irreducibles, ascending in `J`.
pub fn clebsch_gordan(j1: HalfInt, j2: HalfInt) -> Vec<CouplingBlock> {
    j1.coupled(j2).map(|j| CouplingBlock { j, embedding: coupling_embedding(j1, j2, j) }).collect()
}

fn coupling_embedding(j1: HalfInt, j2: HalfInt, j: HalfInt) -> CMatrix {
    let (d1, d2) = (j1.dim(), j2.dim());
    let mut e = zeros(d1 * d2, j.dim());
    for (k1, m1) in j1.magnetic().enumerate() {
        for (k2, m2) in j2.magnetic().enumerate() {
            let m = m1 + m2;
            if j.admits(m) {
                let c = clebsch_gordan_coefficient(j1, m1, j2, m2, j, m);
                e[(k1 * d2 + k2, j.index_of(m))] = C64::new(c, 0.0);
            }
        }
    }
    e
}

/// Orthonormal basis of the invariant subspace of `⊗ D^{(jᵢ)}`.
#[derive(Clone, Debug)]
pub struct IntertwinerBasis {
    pub incident_spins: Vec<HalfInt>,
    /// For each column, the intermediate spins of the left-to-right coupling
    /// `((j1 j2)J₁₂ j3)J₁₂₃ …`, ending in the total spin 0.
    pub coupling_tree: Vec<Vec<HalfInt>>,
    /// Columns live in the product space, factor 0 most significant.
    pub vectors: CMatrix,
}

impl IntertwinerBasis {
    pub fn dim(&self) -> usize {
        self.vectors.ncols()
    }
}

/// Invariant subspace of `⊗ᵢ D^{(jᵢ)}`, built by sequential coupling to
/// total spin zero and orthonormalized.
///
/// # Panics
/// If `spins` is empty.
pub fn intertwiner_basis(spins: &[HalfInt]) -> IntertwinerBasis {
    assert!(!spins.is_empty(), "intertwiner_basis: no spins");
    // Partial couplings: (path, current J, isometry from J into the product so far).
    let mut partial = vec![(vec![spins[0]], spins[0], identity(spins[0].dim()))];
    for (k, &jk) in spins.iter().enumerate().skip(1) {
        let remaining: i32 = spins[k + 1..].iter().map(|s| s.twice()).sum();
        let mut next = Vec::new();
        for (path, j, e) in &partial {
            let lifted = kron(e, &identity(jk.dim()));
            for block in clebsch_gordan(*j, jk) {
                if block.j.twice() > remaining {
                    continue;
                }
                let mut p = path.clone();
                p.push(block.j);
                next.push((p, block.j, &lifted * &block.embedding));
            }
        }
        partial = next;
    }
    let done: Vec<_> = partial.into_iter().filter(|(_, j, _)| *j == HalfInt::ZERO).collect();
    let total: usize = spins.iter().map(|s| s.dim()).product();
    let raw = CMatrix::from_fn(total, done.len(), |r, c| done[c].2[(r, 0)]);
    let vectors = orthonormalize_columns(&raw, 1e-10);
    debug_assert_eq!(vectors.ncols(), done.len());
    IntertwinerBasis {
        incident_spins: spins.to_vec(),
        coupling_tree: done.into_iter().map(|(p, _, _)| p).collect(),
        vectors,
    }
}

/// Invariant vectors for slots that carry either the left (column index) or
/// the right (row index, conjugate) action of the vertex gauge group.
///
/// Right slots transform by the conjugate representation, so the plain
/// intertwiners are mapped through `W` on those factors.
pub fn invariant_basis(slots: &[(HalfInt, Side)]) -> CMatrix {
    if slots.is_empty() {
        return identity(1);
    }
    let spins: Vec<HalfInt> = slots.iter().map(|s| s.0).collect();
    let dims: Vec<usize> = spins.iter().map(|s| s.dim()).collect();
    let mut v = intertwiner_basis(&spins).vectors;
    for (k, (j, side)) in slots.iter().enumerate() {
        if *side == Side::Right && j.twice() > 0 {
            v = embed(&conjugation_intertwiner(*j), k, &dims) * v;
        }
    }
    v
}
