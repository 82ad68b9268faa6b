//! Loading instances and running the kernelize / solve / lift stages on
//! the original graph.

use std::path::Path;
use std::time::{Duration, Instant};

use rppk_core::graph::{connected_components, imbalanced_vertices, ClosedWalk, EdgeMultiset};
use rppk_core::kernel::{kernelize, Kernel, KernelOptions};
use rppk_core::metric::{metric_close, MetricInstance, MetricRpp};
use rppk_core::ratio::Rational;
use rppk_core::solver::{approx_32, ee_to_tour, exact_small, lift_to_graph, KernelSolution};
use rppk_core::RppInstance;

use crate::corberan::parse_corberan;
use crate::edgelist::parse_edgelist;
use crate::error::{FormatError, ParseError};

#[derive(Debug, Clone)]
pub struct Loaded {
    pub name: String,
    pub instance: RppInstance,
    pub warnings: Vec<String>,
}

/// Parses either format: canonical edge lists start with a `v` header,
/// anything else is read as a Corberán file.
pub fn parse_instance(
    text: &str,
) -> Result<(Option<String>, RppInstance, Vec<String>), ParseError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    if first.is_some_and(|l| l.starts_with("v ") || l == "v") {
        Ok((None, parse_edgelist(text)?, Vec::new()))
    } else {
        let f = parse_corberan(text)?;
        Ok((f.name, f.instance, f.warnings))
    }
}

pub fn read_instance(path: &Path) -> Result<Loaded, FormatError> {
    let text = std::fs::read_to_string(path)?;
    let (_, instance, warnings) = parse_instance(&text)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(Loaded {
        name,
        instance,
        warnings,
    })
}

/// Input columns of the result tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InstanceStats {
    pub vertices: usize,
    pub required_vertices: usize,
    pub required_edges: usize,
    pub b: usize,
    pub c: usize,
    pub required_weight: u64,
}

pub fn stats(inst: &RppInstance) -> InstanceStats {
    InstanceStats {
        vertices: inst.graph().vertex_count(),
        required_vertices: inst.required_vertices().len(),
        required_edges: inst.required().len(),
        b: imbalanced_vertices(inst.required()).len(),
        c: connected_components(inst.required()).count(),
        required_weight: inst.required().total_weight(),
    }
}

/// The metric closure over V(R) and the instance it induces.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub closure: MetricInstance,
    pub metric: MetricRpp,
    pub elapsed: Duration,
}

/// `None` when R is empty: the empty walk is then optimal.
pub fn prepare(inst: &RppInstance) -> rppk_core::Result<Option<Prepared>> {
    let terminals = inst.required_vertices();
    if terminals.is_empty() {
        return Ok(None);
    }
    let start = Instant::now();
    let closure = metric_close(inst, &terminals)?;
    let metric = closure.rpp(inst)?;
    Ok(Some(Prepared {
        closure,
        metric,
        elapsed: start.elapsed(),
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Approx32,
    Exact,
}

/// A tour in the original graph.
pub fn solve(prep: &Prepared, method: Method) -> rppk_core::Result<ClosedWalk> {
    let s = match method {
        Method::Approx32 => approx_32(&prep.metric)?,
        Method::Exact => exact_small(&prep.metric)?,
    };
    prep.closure.expand_walk(&ee_to_tour(&prep.metric, &s)?)
}

pub struct Kernelized {
    pub kernel: Kernel,
    pub elapsed: Duration,
}

pub fn kernelize_prepared(
    prep: &Prepared,
    eps: Rational,
    options: KernelOptions,
) -> rppk_core::Result<Kernelized> {
    let start = Instant::now();
    let kernel = kernelize(&prep.metric, eps, options)?;
    Ok(Kernelized {
        kernel,
        elapsed: start.elapsed(),
    })
}

/// 3/2-approximation on the kernel, lifted to the original graph.
pub fn lifted_approx(prep: &Prepared, kernel: &Kernel) -> rppk_core::Result<ClosedWalk> {
    let s = approx_32(&kernel.instance)?;
    lift_to_graph(
        &prep.closure,
        &prep.metric,
        &kernel.trace,
        &KernelSolution::Extension(s),
    )
}

/// Checks that a closed walk uses only graph edges and covers R.
pub fn check_tour(inst: &RppInstance, walk: &ClosedWalk) -> Result<(), String> {
    let n = inst.graph().vertex_count();
    if let Some(&v) = walk.vertices().iter().find(|&&v| v >= n) {
        return Err(format!("vertex {v} is outside the graph"));
    }
    let used = walk.edge_multiset();
    for (e, m) in used.iter() {
        if inst.graph().edges().count(e) == 0 {
            return Err(format!("{e:?} (used {m} times) is not a graph edge"));
        }
    }
    if let Some(e) = used.first_missing(inst.required()) {
        return Err(format!("required edge {e:?} is not traversed often enough"));
    }
    if !inst.required().is_empty() && walk.is_empty() {
        return Err("empty walk".into());
    }
    Ok(())
}

/// Checks that S consists of graph edges and G⟨R ⊎ S⟩ is connected and
/// balanced.
pub fn check_extension(inst: &RppInstance, s: &EdgeMultiset) -> Result<(), String> {
    if let Some((e, _)) = s
        .iter()
        .find(|(e, _)| e.v >= inst.graph().vertex_count() || inst.graph().edges().count(e) == 0)
    {
        return Err(format!("{e:?} is not a graph edge"));
    }
    let all = inst.required().union(s);
    if let Some(v) = imbalanced_vertices(&all).first() {
        return Err(format!("vertex {v} has odd degree"));
    }
    if connected_components(&all).count() > 1 {
        return Err("required edges and extension are disconnected".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sniffs_both_formats() {
        let (_, a, _) = parse_instance("# x\nv 2\ne 0 1 3 1 1\n").unwrap();
        let (name, b, _) =
            parse_instance("NOMBRE : t\nVERTICES : 2\nLISTA_ARISTAS_REQ :\n(1,2) coste 3\n")
                .unwrap();
        assert_eq!(name.as_deref(), Some("t"));
        assert_eq!(a, b);
    }

    #[test]
    fn empty_required_set_needs_no_preparation() {
        let (_, inst, _) = parse_instance("v 2\ne 0 1 3 0 1\n").unwrap();
        assert!(prepare(&inst).unwrap().is_none());
    }

    #[test]
    fn tours_are_checked_against_the_graph() {
        let (_, inst, _) = parse_instance("v 3\ne 0 1 3 1 1\ne 1 2 4 0 1\n").unwrap();
        let prep = prepare(&inst).unwrap().unwrap();
        let w = solve(&prep, Method::Exact).unwrap();
        assert_eq!(w.weight(), 6);
        assert_eq!(check_tour(&inst, &w), Ok(()));
        let bogus = ClosedWalk::from_steps(
            0,
            &[rppk_core::Edge::new(0, 2, 1), rppk_core::Edge::new(0, 2, 1)],
        )
        .unwrap();
        assert!(check_tour(&inst, &bogus).is_err());
    }
}
