//! Lossy weight reduction: weights are divided by q = εβ/N and floored, so
//! the largest reduced weight is at most N/ε.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, MetricRpp};
use crate::ratio::{floor_div, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightReduction {
    pub q: Rational,
    pub reduced: Vec<u64>,
    pub beta: u64,
    pub n: u64,
    pub eps: Rational,
}

/// q = εβ/N. Zero when β is zero.
pub fn quantum(beta: u64, n: u64, eps: Rational) -> Result<Rational> {
    if n == 0 {
        return Err(Error::ZeroSolutionSize);
    }
    if eps == Rational::from_integer(0) {
        return Err(Error::NonPositiveEpsilon);
    }
    Ok(eps * Rational::from_integer(beta as u128) / Rational::from_integer(n as u128))
}

/// `floor(w / q)`, with everything collapsing to zero when q is zero.
fn shrink(w: u64, q: &Rational) -> u64 {
    if *q.numer() == 0 {
        0
    } else {
        floor_div(w, q)
    }
}

pub fn reduce_weights(
    weights: &[u64],
    beta: u64,
    n: u64,
    eps: Rational,
) -> Result<WeightReduction> {
    if let Some(&w) = weights.iter().find(|&&w| w > beta) {
        return Err(Error::WeightAboveCap {
            weight: w,
            cap: beta,
        });
    }
    let q = quantum(beta, n, eps)?;
    let reduced = weights.iter().map(|&w| shrink(w, &q)).collect();
    Ok(WeightReduction {
        q,
        reduced,
        beta,
        n,
        eps,
    })
}

/// Applies the quantum to the distances and to every required edge.
pub fn quantize_instance(inst: &MetricRpp, q: &Rational) -> MetricRpp {
    let n = inst.vertex_count();
    let d = inst.dist();
    let dist = DistanceMatrix::from_fn(n, |i, j| shrink(d.get(i, j), q))
        .expect("floored matrix stays symmetric");
    let required = inst.required().reweight(|e| shrink(e.weight, q));
    MetricRpp::new(dist, required).expect("floor preserves weight >= distance")
}

/// β = ω(R) + ω(T) and N = |R₂| + b/2 + 2c − 2.
pub fn psaks_weight_params(
    required_weight: u64,
    connecting_weight: u64,
    kernel_required: usize,
    b: usize,
    c: usize,
) -> (u64, u64) {
    let beta = required_weight + connecting_weight;
    let n = kernel_required + b / 2 + (2 * c).saturating_sub(2);
    (beta, n as u64)
}
