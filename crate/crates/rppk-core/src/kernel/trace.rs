use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::EdgeMultiset;
use crate::metric::MetricRpp;
use crate::ratio::Rational;
use crate::weights::quantize_instance;

/// Distance threshold of the balanced-vertex rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gamma {
    Finite(Rational),
    Infinite,
}

impl Gamma {
    /// `d > γ`.
    pub fn exceeded_by(&self, d: u64) -> bool {
        match self {
            Gamma::Finite(g) => crate::ratio::exceeds(d, g),
            Gamma::Infinite => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractionCase {
    /// `v` is not a cut vertex: its edges are replaced by a matching.
    NonCut,
    /// `v` joins two blocks and disappears after the shortcut.
    TwoBlocks,
    /// Two-block shortcut followed by the non-cut replacement.
    TwoBlocksThenNonCut,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceStep {
    /// M* added to R.
    AddedMatching(EdgeMultiset),
    Extraction {
        vertex: usize,
        case: ExtractionCase,
        removed: EdgeMultiset,
        added: EdgeMultiset,
    },
    /// Edges of one deleted cycle.
    StrippedCycle(EdgeMultiset),
    /// Vertices removed; survivors are renumbered in ascending order.
    DeletedVertices(Vec<usize>),
    /// Weights replaced by `floor(w / q)`.
    WeightQuantum { q: Rational, beta: u64, n: u64 },
}

/// Everything needed to rebuild a kernel from its input and to lift kernel
/// solutions back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelTrace {
    pub eps: Rational,
    pub eps1: Rational,
    pub eps2: Rational,
    pub gamma: Gamma,
    /// Vertex count of the instance the steps start from.
    pub input_vertices: usize,
    pub steps: Vec<TraceStep>,
    /// Kernel vertex id -> input vertex id.
    pub vertex_map: Vec<usize>,
}

impl KernelTrace {
    /// Applies the steps to `input`, returning the kernel.
    pub fn replay(&self, input: &MetricRpp) -> Result<MetricRpp> {
        if input.vertex_count() != self.input_vertices {
            return Err(Error::Trace(format!(
                "trace expects {} vertices, instance has {}",
                self.input_vertices,
                input.vertex_count()
            )));
        }
        let mut current = input.clone();
        let mut ids: Vec<usize> = (0..input.vertex_count()).collect();
        for (i, step) in self.steps.iter().enumerate() {
            current = match step {
                TraceStep::AddedMatching(m) => {
                    current.with_required(current.required().union(m))?
                }
                TraceStep::Extraction { removed, added, .. } => {
                    if !current.required().contains_all(removed) {
                        return Err(Error::Trace(format!("step {i} removes absent edges")));
                    }
                    current.with_required(current.required().difference(removed).union(added))?
                }
                TraceStep::StrippedCycle(c) => {
                    if !current.required().contains_all(c) {
                        return Err(Error::Trace(format!("step {i} removes absent edges")));
                    }
                    current.with_required(current.required().difference(c))?
                }
                TraceStep::DeletedVertices(del) => {
                    let mut gone = alloc::vec![false; current.vertex_count()];
                    for &v in del {
                        if v >= gone.len() {
                            return Err(Error::Trace(format!(
                                "step {i} deletes unknown vertex {v}"
                            )));
                        }
                        gone[v] = true;
                    }
                    let keep: Vec<usize> =
                        (0..current.vertex_count()).filter(|&v| !gone[v]).collect();
                    if let Some(e) = current
                        .required()
                        .iter()
                        .map(|(e, _)| e)
                        .find(|e| gone[e.u] || gone[e.v])
                    {
                        return Err(Error::Trace(format!(
                            "step {i} deletes vertex of required edge {e:?}"
                        )));
                    }
                    ids = keep.iter().map(|&k| ids[k]).collect();
                    restrict(&current, &keep)
                }
                TraceStep::WeightQuantum { q, .. } => quantize_instance(&current, q),
            };
        }
        if ids != self.vertex_map {
            return Err(Error::Trace(
                "vertex map does not match the deletions".into(),
            ));
        }
        Ok(current)
    }

    /// All M* edges added along the way, over input ids.
    pub fn added_matching(&self) -> EdgeMultiset {
        let mut out = EdgeMultiset::new();
        for step in &self.steps {
            if let TraceStep::AddedMatching(m) = step {
                out = out.union(m);
            }
        }
        out
    }

    pub fn weight_reduced(&self) -> bool {
        self.steps
            .iter()
            .any(|s| matches!(s, TraceStep::WeightQuantum { .. }))
    }
}

/// Induced instance on `keep` (ascending), renumbered densely.
pub(crate) fn restrict(inst: &MetricRpp, keep: &[usize]) -> MetricRpp {
    let bound = inst.vertex_count();
    let mut new_id = alloc::vec![usize::MAX; bound];
    for (i, &k) in keep.iter().enumerate() {
        new_id[k] = i;
    }
    let required = inst.required().map_vertices(|v| new_id[v]);
    MetricRpp::new(inst.dist().restrict(keep), required)
        .expect("restriction keeps required edges valid")
}
