//! The approximate kernelization: balanced-vertex extraction, cycle
//! stripping, deletion of non-required vertices and optional weight
//! reduction, with a trace for lifting solutions back.

mod rules;
mod trace;

pub use rules::{
    extract_vertex, representatives, rule_add_matching, rule_delete_nonrequired,
    rule_extract_balanced, rule_strip_cycles,
};
pub use trace::{ExtractionCase, Gamma, KernelTrace, TraceStep};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::metric::MetricRpp;
use crate::ratio::Rational;
use crate::solver::{connecting_set, lower_bound};
use crate::weights::{psaks_weight_params, quantize_instance, quantum};

/// Which quantity γ is scaled from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GammaBound {
    /// ω(R).
    #[default]
    Required,
    /// The combined lower bound on the optimum tour.
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KernelOptions {
    /// Split ε evenly between extraction and weight reduction instead of
    /// spending all of it on extraction.
    pub weight_reduction: bool,
    pub gamma_bound: GammaBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    pub instance: MetricRpp,
    pub trace: KernelTrace,
}

/// γ = ε₁·W/(4c−4), or ∞ for a single component.
pub fn gamma_for(eps1: Rational, weight: u64, c: usize) -> Gamma {
    if c <= 1 {
        return Gamma::Infinite;
    }
    Gamma::Finite(
        eps1 * Rational::from_integer(weight as u128) / Rational::from_integer(4 * c as u128 - 4),
    )
}

/// Kernelizes a metric instance.
pub fn kernelize(inst: &MetricRpp, eps: Rational, options: KernelOptions) -> Result<Kernel> {
    if eps == Rational::from_integer(0) {
        return Err(Error::NonPositiveEpsilon);
    }
    if !inst.is_metric() {
        let (i, k, j) = inst.dist().triangle_violation().unwrap_or((0, 0, 0));
        return Err(Error::NotMetric(i, k, j));
    }
    let half = Rational::new(1, 2);
    let (eps1, eps2) = if options.weight_reduction {
        (eps * half, eps * half)
    } else {
        (eps, Rational::from_integer(0))
    };
    let b = inst.b();
    let c = inst.c();
    let base = match options.gamma_bound {
        GammaBound::Required => inst.required().total_weight(),
        GammaBound::LowerBound => lower_bound(inst)?,
    };
    let gamma = gamma_for(eps1, base, c);

    let mut steps = Vec::new();
    let (reduced, extractions) = rule_extract_balanced(inst, &gamma)?;
    steps.extend(extractions);
    let (reduced, strips) = rule_strip_cycles(&reduced);
    steps.extend(strips);
    let (mut reduced, vertex_map, deletion) = rule_delete_nonrequired(&reduced)?;
    steps.extend(deletion);

    if options.weight_reduction && !reduced.required().is_empty() {
        let (beta, n) = psaks_weight_params(
            inst.required().total_weight(),
            connecting_set(inst).total_weight(),
            reduced.required().len(),
            b,
            c,
        );
        let q = quantum(beta, n, eps2)?;
        reduced = quantize_instance(&reduced, &q);
        steps.push(TraceStep::WeightQuantum { q, beta, n });
    }

    let trace = KernelTrace {
        eps,
        eps1,
        eps2,
        gamma,
        input_vertices: inst.vertex_count(),
        steps,
        vertex_map,
    };
    Ok(Kernel {
        instance: reduced,
        trace,
    })
}

/// Upper bound on the kernel's vertex count: 2b + 2c + 16(c−1)/ε₁.
pub fn vertex_bound(b: usize, c: usize, eps1: Rational) -> Rational {
    Rational::from_integer((2 * b + 2 * c) as u128)
        + Rational::from_integer(16 * c.saturating_sub(1) as u128) / eps1
}

/// Upper bound on the kernel's required edge count: 4b + 4c + 32(c−1)/ε₁.
pub fn edge_bound(b: usize, c: usize, eps1: Rational) -> Rational {
    Rational::from_integer((4 * b + 4 * c) as u128)
        + Rational::from_integer(32 * c.saturating_sub(1) as u128) / eps1
}
