use alloc::vec::Vec;

use rand::Rng;

use super::function::{evaluate, same_graph, CylFun};
use super::CylError;
use crate::su2::{haar_sample, GroupElement};
use crate::C64;

/// A Monte Carlo estimate of a complex mean.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub value: C64,
    /// `√(E|x - μ|² / N)`.
    pub std_error: f64,
}

/// Estimates `⟨f1, f2⟩` by sampling every edge holonomy from Haar measure.
pub fn mc_inner_product<R: Rng + ?Sized>(
    f1: &CylFun,
    f2: &CylFun,
    samples: usize,
    rng: &mut R,
) -> Result<McEstimate, CylError> {
    if !same_graph(f1.graph(), f2.graph()) {
        return Err(CylError::GraphMismatch);
    }
    if samples == 0 {
        return Err(CylError::NoSamples);
    }
    let edges = f1.graph().num_edges();
    let mut assignment: Vec<GroupElement> = Vec::with_capacity(edges);
    let mut sum = C64::new(0.0, 0.0);
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        assignment.clear();
        assignment.extend((0..edges).map(|_| haar_sample(rng)));
        let x = evaluate(f1, &assignment)?.conj() * evaluate(f2, &assignment)?;
        sum += x;
        sum_sq += x.norm_sqr();
    }
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean.norm_sqr()).max(0.0);
    Ok(McEstimate { value: mean, std_error: libm::sqrt(var / n) })
}
