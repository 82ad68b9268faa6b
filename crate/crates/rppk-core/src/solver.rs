//! Eulerian extensions: the connecting set T, the balancing matching M, the
//! 3/2-approximation, conversion to and from tours, a brute-force optimum
//! for tiny instances, lower bounds and lifting kernel solutions.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{
    connected_components, euler_tour, imbalanced_vertices, ClosedWalk, Edge, EdgeMultiset,
};
use crate::kernel::{kernelize, rule_add_matching, rule_delete_nonrequired, rule_strip_cycles};
use crate::kernel::{Gamma, Kernel, KernelOptions, KernelTrace, TraceStep};
use crate::matching::min_weight_perfect_matching;
use crate::metric::{MetricInstance, MetricRpp};
use crate::ratio::{at_most_times, Rational};

/// Minimum-weight set of c−1 metric edges connecting the components of R.
/// Components are joined Kruskal-style by their cheapest vertex pair,
/// ties broken by (distance, u, v).
pub fn connecting_set(inst: &MetricRpp) -> EdgeMultiset {
    let comps = connected_components(inst.required());
    let c = comps.count();
    let mut out = EdgeMultiset::new();
    if c <= 1 {
        return out;
    }
    let members = comps.members();
    let mut cand = Vec::with_capacity(c * (c - 1) / 2);
    for a in 0..c {
        for b in a + 1..c {
            let mut best: Option<(u64, usize, usize)> = None;
            for &u in &members[a] {
                for &v in &members[b] {
                    let key = (inst.dist().get(u, v), u.min(v), u.max(v));
                    if best.is_none_or(|k| key < k) {
                        best = Some(key);
                    }
                }
            }
            let (d, u, v) = best.expect("components are non-empty");
            cand.push((d, u, v, a, b));
        }
    }
    cand.sort_unstable();
    let mut parent: Vec<usize> = (0..c).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (_, u, v, a, b) in cand {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            out.insert(inst.edge(u, v));
            if out.len() == c - 1 {
                break;
            }
        }
    }
    out
}

/// Minimum-weight perfect matching on the odd-degree vertices of R.
pub fn balancing_matching(inst: &MetricRpp) -> Result<EdgeMultiset> {
    let odd = imbalanced_vertices(inst.required());
    matching_edges(inst, &odd)
}

fn matching_edges(inst: &MetricRpp, vertices: &[usize]) -> Result<EdgeMultiset> {
    let m = min_weight_perfect_matching(vertices, |a, b| inst.dist().get(a, b))?;
    Ok(m.pairs.iter().map(|&(a, b)| inst.edge(a, b)).collect())
}

/// T plus a minimum-weight perfect matching on the odd vertices of R ⊎ T.
pub fn approx_32(inst: &MetricRpp) -> Result<EdgeMultiset> {
    let t = connecting_set(inst);
    let odd = imbalanced_vertices(&inst.required().union(&t));
    Ok(t.union(&matching_edges(inst, &odd)?))
}

/// ω(R) + max{ω(M), ω(T), ⌊(ω(M) + ω(T))/2⌋}.
pub fn lower_bound(inst: &MetricRpp) -> Result<u64> {
    let m = balancing_matching(inst)?.total_weight();
    let t = connecting_set(inst).total_weight();
    Ok(inst.required().total_weight() + m.max(t).max((m + t) / 2))
}

/// Why a multiset is not an Eulerian extension.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EeViolation {
    #[error("vertex {0} is outside the instance")]
    OutOfRange(usize),
    #[error("{0:?} is neither a shortest edge nor a copy of a required edge")]
    NotAnEdge(Edge),
    #[error("vertex {0} has odd degree")]
    Imbalanced(usize),
    #[error("vertices {0} and {1} are in different components")]
    Disconnected(usize, usize),
}

/// Checks that G⟨R ⊎ S⟩ is connected and balanced and that S uses only
/// edges of the complete distance graph or parallel copies of required edges.
pub fn verify_ee(inst: &MetricRpp, s: &EdgeMultiset) -> core::result::Result<(), EeViolation> {
    let n = inst.vertex_count();
    for (e, _) in s.iter() {
        if e.v >= n {
            return Err(EeViolation::OutOfRange(e.v));
        }
        let shortest = !e.is_loop() && e.weight == inst.dist().get(e.u, e.v);
        if !shortest && inst.required().count(e) == 0 {
            return Err(EeViolation::NotAnEdge(*e));
        }
    }
    let all = inst.required().union(s);
    if let Some(&v) = imbalanced_vertices(&all).first() {
        return Err(EeViolation::Imbalanced(v));
    }
    let comps = connected_components(&all);
    if comps.count() > 1 {
        let members = comps.members();
        return Err(EeViolation::Disconnected(members[0][0], members[1][0]));
    }
    Ok(())
}

fn checked(inst: &MetricRpp, s: &EdgeMultiset) -> Result<()> {
    verify_ee(inst, s).map_err(|v| Error::InvalidExtension(format!("{v}")))
}

/// Euler tour of G⟨R ⊎ S⟩, of weight ω(R) + ω(S).
pub fn ee_to_tour(inst: &MetricRpp, s: &EdgeMultiset) -> Result<ClosedWalk> {
    checked(inst, s)?;
    euler_tour(&inst.required().union(s))
}

/// S = E(W) ∖ R for a closed walk covering R.
pub fn tour_to_ee(inst: &MetricRpp, walk: &ClosedWalk) -> Result<EdgeMultiset> {
    let used = walk.edge_multiset();
    if let Some(e) = used.first_missing(inst.required()) {
        return Err(Error::MissingRequired(e));
    }
    Ok(used.difference(inst.required()))
}

/// Largest search the exact oracle accepts, counted as multisets of at most
/// `budget` vertex pairs.
const SEARCH_LIMIT: u128 = 1_000_000_000;

/// Optimal Eulerian extension minimizing (weight, edge count), searched
/// over edges between vertices of R with at most |M| + 2|T| edges.
pub fn exact_small(inst: &MetricRpp) -> Result<EdgeMultiset> {
    let budget = inst.b() / 2 + 2 * inst.c().saturating_sub(1);
    exact_small_over(inst, budget)
}

/// [`exact_small`] with an explicit edge budget. Among optimal solutions
/// the lexicographically least sorted edge list is returned.
pub fn exact_small_over(inst: &MetricRpp, budget: usize) -> Result<EdgeMultiset> {
    let verts = inst.required().vertices();
    let n = verts.len();
    let pairs = n * n.saturating_sub(1) / 2;
    if search_size(pairs, budget) > SEARCH_LIMIT {
        return Err(Error::SearchTooLarge(format!(
            "{n} vertices with an edge budget of {budget}"
        )));
    }
    let mut local = vec![usize::MAX; inst.vertex_count()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let mut cand = Vec::with_capacity(pairs);
    for i in 0..n {
        for j in i + 1..n {
            cand.push((i, j, inst.dist().get(verts[i], verts[j])));
        }
    }
    let mut parity = vec![false; n];
    let mut r_edges = Vec::new();
    for (e, m) in inst.required().iter() {
        if m % 2 == 1 && !e.is_loop() {
            parity[local[e.u]] ^= true;
            parity[local[e.v]] ^= true;
        }
        if !e.is_loop() {
            r_edges.push((local[e.u], local[e.v]));
        }
    }
    let mut cheapest = vec![u64::MAX; n];
    for &(i, j, w) in &cand {
        cheapest[i] = cheapest[i].min(w);
        cheapest[j] = cheapest[j].min(w);
    }
    let mut suffix_min = vec![u64::MAX; cand.len() + 1];
    for k in (0..cand.len()).rev() {
        suffix_min[k] = suffix_min[k + 1].min(cand[k].2);
    }

    let mut search = Search {
        n,
        cand: &cand,
        r_edges: &r_edges,
        cheapest: &cheapest,
        suffix_min: &suffix_min,
        budget,
        count: vec![0; cand.len()],
        parity,
        chosen: Vec::new(),
        best: None,
    };
    // a valid incumbent within budget tightens pruning from the start
    if let Ok(s) = approx_32(inst) {
        if s.len() <= budget && s.iter().all(|(e, m)| !e.is_loop() && m <= 2) {
            let ids: Option<Vec<usize>> = s
                .units()
                .iter()
                .map(|e| {
                    cand.iter()
                        .position(|&(i, j, _)| verts[i] == e.u && verts[j] == e.v)
                })
                .collect();
            if let Some(mut ids) = ids {
                ids.sort_unstable();
                search.best = Some((s.total_weight(), ids.len(), ids));
            }
        }
    }
    search.run(0, 0);
    match search.best {
        Some((_, _, ids)) => Ok(ids
            .iter()
            .map(|&k| inst.edge(verts[cand[k].0], verts[cand[k].1]))
            .collect()),
        None => Err(Error::InvalidExtension(format!(
            "no Eulerian extension with at most {budget} edges"
        ))),
    }
}

fn search_size(pairs: usize, budget: usize) -> u128 {
    // sum over k <= budget of C(pairs + k - 1, k)
    let mut total: u128 = 1;
    let mut term: u128 = 1;
    for k in 1..=budget as u128 {
        term = term.saturating_mul(pairs as u128 + k - 1) / k;
        total = total.saturating_add(term);
        if total > SEARCH_LIMIT {
            return total;
        }
    }
    total
}

struct Search<'a> {
    n: usize,
    cand: &'a [(usize, usize, u64)],
    r_edges: &'a [(usize, usize)],
    cheapest: &'a [u64],
    suffix_min: &'a [u64],
    budget: usize,
    count: Vec<u8>,
    parity: Vec<bool>,
    chosen: Vec<usize>,
    best: Option<(u64, usize, Vec<usize>)>,
}

impl Search<'_> {
    fn components(&self) -> usize {
        let mut p: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = self.n;
        let extra = self
            .chosen
            .iter()
            .map(|&k| (self.cand[k].0, self.cand[k].1));
        for (a, b) in self.r_edges.iter().copied().chain(extra) {
            let (ra, rb) = (find(&mut p, a), find(&mut p, b));
            if ra != rb {
                p[ra] = rb;
                comps -= 1;
            }
        }
        comps
    }

    fn worse_than_best(&self, weight: u64, edges: usize) -> bool {
        match &self.best {
            Some((bw, be, _)) => (weight, edges) > (*bw, *be),
            None => false,
        }
    }

    fn run(&mut self, from: usize, weight: u64) {
        let odd = self.parity.iter().filter(|&&p| p).count();
        let comps = self.components();
        let k = self.chosen.len();
        if odd == 0 && comps <= 1 {
            let mut ids = self.chosen.clone();
            ids.sort_unstable();
            let better = match &self.best {
                None => true,
                Some((bw, be, bids)) => (weight, k, &ids) < (*bw, *be, bids),
            };
            if better {
                self.best = Some((weight, k, ids));
            }
            return;
        }
        let need = (odd / 2).max(comps - 1);
        if k + need > self.budget || from >= self.cand.len() {
            return;
        }
        let odd_lb: u64 = self
            .parity
            .iter()
            .zip(self.cheapest)
            .filter(|(p, _)| **p)
            .map(|(_, &c)| c)
            .sum::<u64>()
            .div_ceil(2);
        let lb = odd_lb.max((comps as u64 - 1).saturating_mul(self.suffix_min[from]));
        if self.worse_than_best(weight.saturating_add(lb), k + need) {
            return;
        }
        for idx in from..self.cand.len() {
            if self.count[idx] >= 2 {
                continue;
            }
            let (i, j, w) = self.cand[idx];
            if self.worse_than_best(weight + w, k + 1) {
                continue;
            }
            self.count[idx] += 1;
            self.parity[i] ^= true;
            self.parity[j] ^= true;
            self.chosen.push(idx);
            self.run(idx, weight + w);
            self.chosen.pop();
            self.parity[i] ^= true;
            self.parity[j] ^= true;
            self.count[idx] -= 1;
        }
    }
}

/// A solution on the kernel, either form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelSolution {
    Extension(EdgeMultiset),
    Tour(ClosedWalk),
}

/// Maps a kernel extension back to the input: kernel ids are translated,
/// edges are reweighted by input distances and every M* from the trace is
/// added. The result is verified on the input.
pub fn lift_extension(
    input: &MetricRpp,
    trace: &KernelTrace,
    solution: &KernelSolution,
) -> Result<EdgeMultiset> {
    let kernel = trace.replay(input)?;
    let s = match solution {
        KernelSolution::Extension(s) => s.clone(),
        KernelSolution::Tour(w) => tour_to_ee(&kernel, w)?,
    };
    checked(&kernel, &s)?;
    let mut lifted = EdgeMultiset::new();
    for (e, m) in s.iter() {
        let (u, v) = (trace.vertex_map[e.u], trace.vertex_map[e.v]);
        lifted.insert_n(input.edge(u, v), m);
    }
    let lifted = lifted.union(&trace.added_matching());
    checked(input, &lifted)?;
    Ok(lifted)
}

/// Lifted solution as a tour over the input's metric ids.
pub fn lift_solution(
    input: &MetricRpp,
    trace: &KernelTrace,
    solution: &KernelSolution,
) -> Result<ClosedWalk> {
    ee_to_tour(input, &lift_extension(input, trace, solution)?)
}

/// Lifted solution as a walk in the original graph behind `closure`.
pub fn lift_to_graph(
    closure: &MetricInstance,
    input: &MetricRpp,
    trace: &KernelTrace,
    solution: &KernelSolution,
) -> Result<ClosedWalk> {
    closure.expand_walk(&lift_solution(input, trace, solution)?)
}

/// Which of the three easy cases applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dispatch {
    /// ω(T) ≤ ε(ω(R)+ω(M)): the tour R ⊎ T ⊎ T ⊎ M is returned directly.
    ConnectingCheap(ClosedWalk),
    /// ω(M) ≤ ε(ω(R)+ω(T)): M is added to R and the result kernelized.
    MatchingCheap(Kernel),
    /// Neither: only cycle stripping and deletion of vertices outside R.
    Exact(Kernel),
}

pub fn easy_dispatch(inst: &MetricRpp, eps: Rational, options: KernelOptions) -> Result<Dispatch> {
    if eps == Rational::from_integer(0) {
        return Err(Error::NonPositiveEpsilon);
    }
    let t = connecting_set(inst);
    let m = balancing_matching(inst)?;
    let r = inst.required().total_weight();
    let (wt, wm) = (t.total_weight(), m.total_weight());
    if at_most_times(wt, &eps, r + wm) {
        let s = t.union(&t).union(&m);
        return Ok(Dispatch::ConnectingCheap(ee_to_tour(inst, &s)?));
    }
    if at_most_times(wm, &eps, r + wt) {
        let (with_m, step) = rule_add_matching(inst, wm)?;
        let mut kernel = kernelize(&with_m, eps, options)?;
        if let Some(step) = step {
            kernel.trace.steps.insert(0, step);
        }
        return Ok(Dispatch::MatchingCheap(kernel));
    }
    let (stripped, mut steps) = rule_strip_cycles(inst);
    let (reduced, vertex_map, deletion) = rule_delete_nonrequired(&stripped)?;
    steps.extend(deletion);
    let zero = Rational::from_integer(0);
    let trace = KernelTrace {
        eps,
        eps1: zero,
        eps2: zero,
        // no balanced-vertex extraction happened
        gamma: Gamma::Finite(zero),
        input_vertices: inst.vertex_count(),
        steps,
        vertex_map,
    };
    Ok(Dispatch::Exact(Kernel {
        instance: reduced,
        trace,
    }))
}

/// Whether a trace step list starts with an added matching.
pub fn has_added_matching(trace: &KernelTrace) -> bool {
    trace
        .steps
        .iter()
        .any(|s| matches!(s, TraceStep::AddedMatching(_)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedMultigraph;
    use crate::instance::RppInstance;
    use crate::metric::{metric_close, DistanceMatrix};

    fn unit(n: usize, req: &[(usize, usize)]) -> MetricRpp {
        let d = DistanceMatrix::from_fn(n, |_, _| 1).unwrap();
        let r = req.iter().map(|&(a, b)| d.edge(a, b)).collect();
        MetricRpp::new(d, r).unwrap()
    }

    fn line(pos: &[u64], req: &[(usize, usize)]) -> MetricRpp {
        let d = DistanceMatrix::from_fn(pos.len(), |a, b| pos[a].abs_diff(pos[b])).unwrap();
        let r = req.iter().map(|&(a, b)| d.edge(a, b)).collect();
        MetricRpp::new(d, r).unwrap()
    }

    /// Four unit triangles joined in a chain by unit edges, closed metrically.
    fn triangle_chain() -> (MetricInstance, MetricRpp) {
        let mut g = EdgeMultiset::new();
        let mut r = EdgeMultiset::new();
        for t in 0..4 {
            let b = 3 * t;
            for (x, y) in [(b, b + 1), (b + 1, b + 2), (b, b + 2)] {
                g.insert(Edge::new(x, y, 1));
                r.insert(Edge::new(x, y, 1));
            }
            if t < 3 {
                g.insert(Edge::new(b + 2, b + 3, 1));
            }
        }
        let inst = RppInstance::new(WeightedMultigraph::new(12, g).unwrap(), r).unwrap();
        let closure = metric_close(&inst, &inst.required_vertices()).unwrap();
        let m = closure.rpp(&inst).unwrap();
        (closure, m)
    }

    #[test]
    fn connecting_set_examples() {
        assert!(connecting_set(&unit(3, &[(0, 1), (1, 2), (0, 2)])).is_empty());
        let two = line(&[0, 1, 6, 7], &[(0, 1), (2, 3)]);
        assert_eq!(connecting_set(&two).total_weight(), 5);
        let three = line(&[0, 1, 2, 3, 4, 5], &[(0, 1), (2, 3), (4, 5)]);
        let t = connecting_set(&three);
        assert_eq!((t.len(), t.total_weight()), (2, 2));
    }

    #[test]
    fn balancing_matching_examples() {
        assert!(balancing_matching(&unit(3, &[(0, 1), (1, 2), (0, 2)]))
            .unwrap()
            .is_empty());
        let one = line(&[0, 4], &[(0, 1)]);
        assert_eq!(
            balancing_matching(&one).unwrap().units(),
            vec![Edge::new(0, 1, 4)]
        );
        let path = line(&[0, 1, 2, 3], &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            balancing_matching(&path).unwrap().units(),
            vec![Edge::new(0, 3, 3)]
        );
    }

    #[test]
    fn approx_examples() {
        let one = unit(3, &[(0, 1)]);
        let s = approx_32(&one).unwrap();
        assert_eq!(s.units(), vec![Edge::new(0, 1, 1)]);
        assert_eq!(ee_to_tour(&one, &s).unwrap().weight(), 2);
        assert!(approx_32(&unit(3, &[(0, 1), (1, 2), (0, 2)]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn tour_conversions() {
        let one = unit(2, &[(0, 1)]);
        let s: EdgeMultiset = [Edge::new(0, 1, 1)].into_iter().collect();
        let w = ee_to_tour(&one, &s).unwrap();
        assert_eq!(w.vertices(), &[0, 1, 0]);
        assert_eq!(tour_to_ee(&one, &w).unwrap(), s);

        let tri = unit(3, &[(0, 1), (1, 2), (0, 2)]);
        let w = ee_to_tour(&tri, &EdgeMultiset::new()).unwrap();
        assert_eq!(w.weight(), 3);
        assert!(tour_to_ee(&tri, &w).unwrap().is_empty());

        let short = ClosedWalk::from_steps(0, &[Edge::new(0, 1, 1), Edge::new(0, 1, 1)]).unwrap();
        assert_eq!(
            tour_to_ee(&tri, &short),
            Err(Error::MissingRequired(Edge::new(0, 2, 1)))
        );
    }

    #[test]
    fn doubled_edge_tour_keeps_multiplicities() {
        let d = DistanceMatrix::from_fn(3, |_, _| 1).unwrap();
        let mut r = EdgeMultiset::new();
        r.insert_n(Edge::new(0, 1, 1), 2);
        r.insert(Edge::new(1, 2, 1));
        let inst = MetricRpp::new(d, r).unwrap();
        let s = approx_32(&inst).unwrap();
        let w = ee_to_tour(&inst, &s).unwrap();
        assert_eq!(w.edge_multiset(), inst.required().union(&s));
        assert_eq!(
            w.weight(),
            inst.required().total_weight() + s.total_weight()
        );
    }

    #[test]
    fn verification_reports() {
        let two = unit(4, &[(0, 1), (0, 1), (2, 3), (2, 3)]);
        assert_eq!(
            verify_ee(&two, &EdgeMultiset::new()),
            Err(EeViolation::Disconnected(0, 2))
        );
        let tri = unit(4, &[(0, 1), (1, 2), (0, 2)]);
        let s: EdgeMultiset = [Edge::new(0, 1, 1)].into_iter().collect();
        assert_eq!(verify_ee(&tri, &s), Err(EeViolation::Imbalanced(0)));
        let heavy: EdgeMultiset = [Edge::new(0, 1, 7)].into_iter().collect();
        assert_eq!(
            verify_ee(&tri, &heavy),
            Err(EeViolation::NotAnEdge(Edge::new(0, 1, 7)))
        );
        let far: EdgeMultiset = [Edge::new(0, 9, 1)].into_iter().collect();
        assert_eq!(verify_ee(&tri, &far), Err(EeViolation::OutOfRange(9)));
        assert_eq!(verify_ee(&tri, &EdgeMultiset::new()), Ok(()));
    }

    #[test]
    fn exact_examples() {
        let one = unit(2, &[(0, 1)]);
        assert_eq!(exact_small(&one).unwrap().units(), vec![Edge::new(0, 1, 1)]);
        assert!(exact_small(&unit(3, &[(0, 1), (1, 2), (0, 2)]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn triangle_chain_doubles_connectors() {
        let (_, inst) = triangle_chain();
        assert_eq!((inst.b(), inst.c()), (0, 4));
        let d = exact_small(&inst).unwrap();
        let mut expect = EdgeMultiset::new();
        for (a, b) in [(2, 3), (5, 6), (8, 9)] {
            expect.insert_n(Edge::new(a, b, 1), 2);
        }
        assert_eq!(d, expect);
        assert_eq!(d.vertices().len(), 2 * inst.c() - 2);
        assert!(lower_bound(&inst).unwrap() <= inst.required().total_weight() + d.total_weight());
    }

    #[test]
    fn exact_refuses_large_searches() {
        let n = 30;
        let req: Vec<(usize, usize)> = (0..n / 2).map(|k| (2 * k, 2 * k + 1)).collect();
        assert!(matches!(
            exact_small(&unit(n, &req)),
            Err(Error::SearchTooLarge(_))
        ));
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(lower_bound(&unit(2, &[(0, 1)])).unwrap(), 2);
        assert_eq!(lower_bound(&unit(3, &[(0, 1), (1, 2), (0, 2)])).unwrap(), 3);
    }

    #[test]
    fn lifting_a_four_cycle_kernel() {
        let inst = unit(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let k = kernelize(&inst, Rational::new(1, 10), KernelOptions::default()).unwrap();
        let s = exact_small(&k.instance).unwrap();
        assert!(s.is_empty());
        let w = lift_solution(&inst, &k.trace, &KernelSolution::Extension(s)).unwrap();
        assert_eq!(w.weight(), 4);
        assert_eq!(w.edge_multiset(), *inst.required());
    }

    #[test]
    fn lifting_through_the_original_graph() {
        let (closure, inst) = triangle_chain();
        let k = kernelize(&inst, Rational::new(1, 10), KernelOptions::default()).unwrap();
        let sol = approx_32(&k.instance).unwrap();
        let tour = ee_to_tour(&k.instance, &sol).unwrap();
        let w = lift_to_graph(&closure, &inst, &k.trace, &KernelSolution::Tour(tour)).unwrap();
        assert_eq!(w.weight(), 18);
        assert!(w.edge_multiset().contains_all(inst.required()));
    }

    #[test]
    fn identity_trace_lifts_to_the_direct_tour() {
        let inst = unit(2, &[(0, 1)]);
        let k = kernelize(&inst, Rational::new(1, 2), KernelOptions::default()).unwrap();
        let s = approx_32(&inst).unwrap();
        let lifted = lift_solution(&inst, &k.trace, &KernelSolution::Extension(s.clone())).unwrap();
        assert_eq!(lifted, ee_to_tour(&inst, &s).unwrap());
    }

    #[test]
    fn lift_rejects_invalid_solutions() {
        let inst = unit(4, &[(0, 1), (2, 3)]);
        let k = kernelize(&inst, Rational::new(1, 2), KernelOptions::default()).unwrap();
        let bad = KernelSolution::Extension(EdgeMultiset::new());
        assert!(matches!(
            lift_solution(&inst, &k.trace, &bad),
            Err(Error::InvalidExtension(_))
        ));
    }

    #[test]
    fn dispatch_cases() {
        let tri_tail = unit(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        match easy_dispatch(&tri_tail, Rational::new(1, 10), KernelOptions::default()).unwrap() {
            Dispatch::ConnectingCheap(w) => assert_eq!(w.weight(), 5),
            other => panic!("{other:?}"),
        }
        // b = 0, far components: only the matching case applies
        let d = DistanceMatrix::from_fn(6, |a, b| if a / 3 == b / 3 { 1 } else { 100 }).unwrap();
        let r = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
            .iter()
            .map(|&(a, b)| d.edge(a, b))
            .collect();
        let two = MetricRpp::new(d, r).unwrap();
        assert!(matches!(
            easy_dispatch(&two, Rational::new(1, 10), KernelOptions::default()).unwrap(),
            Dispatch::MatchingCheap(_)
        ));
        // ω(R) = ω(M) = ω(T) = 10
        let d = DistanceMatrix::from_fn(4, |a, b| {
            let pos = [0u64, 5, 15, 20];
            pos[a].abs_diff(pos[b])
        })
        .unwrap();
        let r = [Edge::new(0, 1, 5), Edge::new(2, 3, 5)]
            .into_iter()
            .collect();
        let equal = MetricRpp::new(d, r).unwrap();
        assert_eq!(balancing_matching(&equal).unwrap().total_weight(), 10);
        assert_eq!(connecting_set(&equal).total_weight(), 10);
        match easy_dispatch(&equal, Rational::new(1, 10), KernelOptions::default()).unwrap() {
            Dispatch::Exact(k) => {
                assert_eq!(k.instance, equal);
                assert!(!has_added_matching(&k.trace));
            }
            other => panic!("{other:?}"),
        }
    }
}
