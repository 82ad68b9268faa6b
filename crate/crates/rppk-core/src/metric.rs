//! Metric closure over a terminal set and re-expansion of metric walks into
//! walks of the original graph.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::error::{Error, Result};
use crate::graph::{
    connected_components, imbalanced_vertices, ClosedWalk, Edge, EdgeMultiset, WeightedMultigraph,
};
use crate::instance::RppInstance;

/// Symmetric matrix of non-negative distances with zero diagonal.
///
/// `is_metric` is a certificate: it is set by the metric closure, by a full
/// triangle check in [`DistanceMatrix::new`], and survives restriction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u64>,
    metric: bool,
}

impl DistanceMatrix {
    /// Validates symmetry and the diagonal, then checks the triangle
    /// inequality to decide whether the matrix is metric.
    pub fn new(n: usize, d: Vec<u64>) -> Result<Self> {
        assert_eq!(d.len(), n * n, "distance data must be n*n");
        for i in 0..n {
            if d[i * n + i] != 0 {
                return Err(Error::NonZeroDiagonal(i));
            }
            for j in 0..i {
                if d[i * n + j] != d[j * n + i] {
                    return Err(Error::Asymmetric(j, i));
                }
            }
        }
        let mut m = DistanceMatrix {
            n,
            d,
            metric: false,
        };
        m.metric = m.triangle_violation().is_none();
        Ok(m)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> u64) -> Result<Self> {
        let mut d = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    d[i * n + j] = f(i.min(j), i.max(j));
                }
            }
        }
        Self::new(n, d)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.d[i * self.n + j]
    }

    pub fn is_metric(&self) -> bool {
        self.metric
    }

    /// The metric edge between `i` and `j`.
    pub fn edge(&self, i: usize, j: usize) -> Edge {
        Edge::new(i, j, self.get(i, j))
    }

    /// First triple (i, k, j) with d(i,j) > d(i,k) + d(k,j).
    pub fn triangle_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for k in 0..n {
            for i in 0..n {
                let ik = self.d[i * n + k];
                for j in 0..n {
                    if self.d[i * n + j] > ik + self.d[k * n + j] {
                        return Some((i, k, j));
                    }
                }
            }
        }
        None
    }

    /// Submatrix on `keep` (in the given order); metric-ness is inherited.
    pub fn restrict(&self, keep: &[usize]) -> DistanceMatrix {
        let k = keep.len();
        let mut d = vec![0; k * k];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                d[a * k + b] = self.get(i, j);
            }
        }
        DistanceMatrix {
            n: k,
            d,
            metric: self.metric,
        }
    }

    /// Applies `f` entrywise off the diagonal; the result is not certified
    /// metric.
    pub fn map(&self, f: impl Fn(u64) -> u64) -> DistanceMatrix {
        let d = self.d.iter().map(|&x| f(x)).collect::<Vec<_>>();
        let mut m = DistanceMatrix {
            n: self.n,
            d,
            metric: false,
        };
        for i in 0..self.n {
            m.d[i * self.n + i] = 0;
        }
        m
    }

    pub(crate) fn certified(n: usize, d: Vec<u64>) -> Self {
        DistanceMatrix { n, d, metric: true }
    }
}

/// Shortest-path closure of a graph on a terminal set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricInstance {
    terminals: Vec<usize>,
    index: Vec<Option<usize>>,
    dist: DistanceMatrix,
    /// Per terminal, the unit edge id leading into every vertex on its
    /// shortest-path tree (`u32::MAX` at the root and unreached vertices).
    pred: Vec<Vec<u32>>,
    units: Vec<Edge>,
    graph: WeightedMultigraph,
}

const NONE: u32 = u32::MAX;

/// Shortest paths from every terminal; `terminals` is deduplicated and
/// sorted. Ties between equal-length paths prefer the smaller predecessor
/// vertex, then the smaller edge id.
pub fn metric_close(instance: &RppInstance, terminals: &[usize]) -> Result<MetricInstance> {
    let graph = instance.graph();
    let n = graph.vertex_count();
    let mut terms = terminals.to_vec();
    terms.sort_unstable();
    terms.dedup();
    if terms.is_empty() {
        return Err(Error::NoTerminals);
    }
    if let Some(&v) = terms.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            count: n,
        });
    }
    let mut index = vec![None; n];
    for (i, &t) in terms.iter().enumerate() {
        index[t] = Some(i);
    }
    if let Some((e, _)) = instance
        .required()
        .iter()
        .find(|(e, _)| index[e.u].is_none() || index[e.v].is_none())
    {
        return Err(Error::NotTerminal(*e));
    }

    let units = graph.edges().units();
    let adj = graph.adjacency();
    let t = terms.len();
    let mut d = vec![0u64; t * t];
    let mut pred = Vec::with_capacity(t);
    let mut dist = vec![u64::MAX; n];
    let mut from = vec![(usize::MAX, usize::MAX); n];
    let mut done = vec![false; n];
    for (si, &s) in terms.iter().enumerate() {
        dist.iter_mut().for_each(|x| *x = u64::MAX);
        from.iter_mut().for_each(|x| *x = (usize::MAX, usize::MAX));
        done.iter_mut().for_each(|x| *x = false);
        let mut heap = BinaryHeap::new();
        dist[s] = 0;
        heap.push(Reverse((0u64, s)));
        while let Some(Reverse((dx, x))) = heap.pop() {
            if done[x] || dx > dist[x] {
                continue;
            }
            done[x] = true;
            for &(y, id, w) in &adj[x] {
                if done[y] {
                    continue;
                }
                let nd = dx + w;
                if nd < dist[y] || (nd == dist[y] && (x, id) < from[y]) {
                    if nd < dist[y] {
                        heap.push(Reverse((nd, y)));
                    }
                    dist[y] = nd;
                    from[y] = (x, id);
                }
            }
        }
        for (ti, &tv) in terms.iter().enumerate() {
            if dist[tv] == u64::MAX {
                return Err(Error::Unreachable(s, tv));
            }
            d[si * t + ti] = dist[tv];
        }
        pred.push(
            from.iter()
                .map(|&(_, id)| if id == usize::MAX { NONE } else { id as u32 })
                .collect(),
        );
    }
    Ok(MetricInstance {
        terminals: terms,
        index,
        dist: DistanceMatrix::certified(t, d),
        pred,
        units,
        graph: graph.clone(),
    })
}

impl MetricInstance {
    /// Original vertex ids of the terminals; position = metric id.
    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    pub fn dist(&self) -> &DistanceMatrix {
        &self.dist
    }

    /// Metric id of an original vertex.
    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.index.get(v).copied().flatten()
    }

    pub fn graph(&self) -> &WeightedMultigraph {
        &self.graph
    }

    /// The required multiset of `instance` over metric ids, as a metric
    /// RPP instance.
    pub fn rpp(&self, instance: &RppInstance) -> Result<MetricRpp> {
        let mut required = EdgeMultiset::new();
        for (e, m) in instance.required().iter() {
            match (self.index_of(e.u), self.index_of(e.v)) {
                (Some(a), Some(b)) => required.insert_n(Edge::new(a, b, e.weight), m),
                _ => return Err(Error::NotTerminal(*e)),
            }
        }
        MetricRpp::new(self.dist.clone(), required)
    }

    /// Shortest path in the original graph from terminal `i` to terminal `j`.
    pub fn path(&self, i: usize, j: usize) -> Vec<Edge> {
        let tree = &self.pred[i];
        let source = self.terminals[i];
        let mut at = self.terminals[j];
        let mut out = Vec::new();
        while at != source {
            let e = self.units[tree[at] as usize];
            out.push(e);
            at = e.other(at);
        }
        out.reverse();
        out
    }

    /// Rewrites a walk over metric ids as a walk in the original graph.
    /// Steps that are original edges between the two terminals are kept;
    /// every other step must weigh exactly the distance and is replaced by
    /// the stored shortest path.
    pub fn expand_walk(&self, walk: &ClosedWalk) -> Result<ClosedWalk> {
        if walk.is_empty() {
            return Ok(ClosedWalk::default());
        }
        let vs = walk.vertices();
        let mut steps = Vec::new();
        for (k, e) in walk.edges().iter().enumerate() {
            let (x, y) = (vs[k], vs[k + 1]);
            if x >= self.terminals.len() || y >= self.terminals.len() {
                return Err(Error::VertexOutOfRange {
                    vertex: x.max(y),
                    count: self.terminals.len(),
                });
            }
            let orig = Edge::new(self.terminals[x], self.terminals[y], e.weight);
            if self.graph.edges().count(&orig) > 0 {
                steps.push(orig);
            } else if e.weight == self.dist.get(x, y) {
                steps.extend(self.path(x, y));
            } else {
                return Err(Error::NotExpandable(k));
            }
        }
        ClosedWalk::from_steps(self.terminals[vs[0]], &steps)
    }

    /// Complete graph on metric ids weighted by distance.
    pub fn to_graph(&self) -> WeightedMultigraph {
        complete_graph(&self.dist)
    }
}

fn complete_graph(dist: &DistanceMatrix) -> WeightedMultigraph {
    let mut edges = EdgeMultiset::new();
    for i in 0..dist.len() {
        for j in i + 1..dist.len() {
            edges.insert(dist.edge(i, j));
        }
    }
    WeightedMultigraph::new(dist.len(), edges).expect("ids in range")
}

/// An RPP instance on the complete graph given by a distance matrix. Every
/// required edge weighs at least the distance between its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricRpp {
    dist: DistanceMatrix,
    required: EdgeMultiset,
}

impl MetricRpp {
    pub fn new(dist: DistanceMatrix, required: EdgeMultiset) -> Result<Self> {
        for (e, _) in required.iter() {
            if e.v >= dist.len() {
                return Err(Error::VertexOutOfRange {
                    vertex: e.v,
                    count: dist.len(),
                });
            }
            if e.weight < dist.get(e.u, e.v) {
                return Err(Error::BelowDistance(*e));
            }
        }
        Ok(MetricRpp { dist, required })
    }

    pub fn dist(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn required(&self) -> &EdgeMultiset {
        &self.required
    }

    pub fn vertex_count(&self) -> usize {
        self.dist.len()
    }

    pub fn is_metric(&self) -> bool {
        self.dist.is_metric()
    }

    pub fn b(&self) -> usize {
        imbalanced_vertices(&self.required).len()
    }

    pub fn c(&self) -> usize {
        connected_components(&self.required).count()
    }

    /// Same distances, different required multiset.
    pub fn with_required(&self, required: EdgeMultiset) -> Result<MetricRpp> {
        MetricRpp::new(self.dist.clone(), required)
    }

    /// The metric edge between `u` and `v`.
    pub fn edge(&self, u: usize, v: usize) -> Edge {
        self.dist.edge(u, v)
    }

    /// Explicit form: the complete distance graph plus the required edges.
    pub fn to_instance(&self) -> RppInstance {
        let complete = complete_graph(&self.dist);
        let edges = complete.edges().union(&self.required);
        let graph = WeightedMultigraph::new(self.dist.len(), edges).expect("ids in range");
        RppInstance::new(graph, self.required.clone()).expect("required edges are graph edges")
    }
}
