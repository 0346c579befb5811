use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_rational::Ratio;

/// An exact half-integer, stored as twice its value.
///
/// Used for spins `j ≥ 0` and magnetic labels `m` with `|m| ≤ j`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn is_spin(self) -> bool {
        self.0 >= 0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// `2j + 1`, the dimension of the spin-`j` representation.
    ///
    /// # Panics
    /// If `self` is negative.
    pub fn dim(self) -> usize {
        assert!(self.0 >= 0, "dimension of negative spin {self}");
        self.0 as usize + 1
    }

    /// Whether `m` is a valid magnetic label for spin `self`.
    pub fn admits(self, m: HalfInt) -> bool {
        self.0 >= 0 && m.0.abs() <= self.0 && (self.0 - m.0) % 2 == 0
    }

    /// Magnetic labels `j, j-1, …, -j`; position `k` is the matrix index.
    pub fn magnetic(self) -> impl Iterator<Item = HalfInt> {
        let t = self.0;
        (0..=t).map(move |k| HalfInt(t - 2 * k))
    }

    /// Matrix index of magnetic label `m` in the spin-`self` representation.
    pub fn index_of(self, m: HalfInt) -> usize {
        debug_assert!(self.admits(m));
        ((self.0 - m.0) / 2) as usize
    }

    /// Magnetic label at matrix index `k`.
    pub fn magnetic_at(self, k: usize) -> HalfInt {
        HalfInt(self.0 - 2 * k as i32)
    }

    /// Spins `|j1 - j2|, …, j1 + j2` in integer steps.
    pub fn coupled(self, other: HalfInt) -> impl Iterator<Item = HalfInt> {
        let lo = (self.0 - other.0).abs();
        let hi = self.0 + other.0;
        (lo..=hi).step_by(2).map(HalfInt)
    }

    /// Exact `j(j+1)`.
    pub fn casimir(self) -> Ratio<i64> {
        casimir_eigenvalue(self)
    }
}

/// Eigenvalue `j(j+1)` of the Laplace–Beltrami operator on the spin-`j`
/// Peter–Weyl block, as an exact rational.
pub fn casimir_eigenvalue(j: HalfInt) -> Ratio<i64> {
    let t = i64::from(j.twice());
    Ratio::new(t * (t + 2), 4)
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
