use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::GroupElement;

/// Draws a Haar-distributed element of SU(2).
///
/// A standard Gaussian vector in ℝ⁴ is normalized to a unit quaternion,
/// whose direction is uniform on S³ ≅ SU(2).
pub fn haar_sample<R: Rng + ?Sized>(rng: &mut R) -> GroupElement {
    loop {
        let q: [f64; 4] = core::array::from_fn(|_| StandardNormal.sample(rng));
        let n = libm::sqrt(q.iter().map(|x| x * x).sum());
        if n > 1e-6 {
            return GroupElement::from_quaternion(q.map(|x| x / n));
        }
    }
}
