//! Multigraphs, edge multisets and the structural algorithms on edge-induced
//! subgraphs: components, parity, blocks and Euler tours.
//!
//! Unit edges of a multiset are numbered in sorted order, one id per copy, so
//! every traversal breaks ties by ascending vertex id and then edge id.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An undirected edge with a weight. Endpoints are stored with `u <= v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: u64,
}

impl Edge {
    pub fn new(a: usize, b: usize, weight: u64) -> Self {
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        Edge { u, v, weight }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> Edge {
        Edge::new(f(self.u), f(self.v), self.weight)
    }
}

/// Multiset of weighted edges with multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EdgeMultiset {
    entries: BTreeMap<Edge, usize>,
    len: usize,
    total_weight: u64,
}

impl EdgeMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, edge: Edge) {
        self.insert_n(edge, 1);
    }

    pub fn insert_n(&mut self, edge: Edge, n: usize) {
        if n == 0 {
            return;
        }
        let edge = Edge::new(edge.u, edge.v, edge.weight);
        *self.entries.entry(edge).or_insert(0) += n;
        self.len += n;
        self.total_weight += edge.weight * n as u64;
    }

    /// Removes one copy; returns false if the edge was absent.
    pub fn remove(&mut self, edge: &Edge) -> bool {
        self.remove_n(edge, 1)
    }

    /// Removes `n` copies, or nothing if fewer than `n` are present.
    pub fn remove_n(&mut self, edge: &Edge, n: usize) -> bool {
        let edge = Edge::new(edge.u, edge.v, edge.weight);
        match self.entries.get_mut(&edge) {
            Some(m) if *m >= n => {
                *m -= n;
                if *m == 0 {
                    self.entries.remove(&edge);
                }
                self.len -= n;
                self.total_weight -= edge.weight * n as u64;
                true
            }
            _ => false,
        }
    }

    pub fn count(&self, edge: &Edge) -> usize {
        self.entries
            .get(&Edge::new(edge.u, edge.v, edge.weight))
            .copied()
            .unwrap_or(0)
    }

    /// Number of edges counted with multiplicity.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    /// Distinct edges with their multiplicities, in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = (&Edge, usize)> + '_ {
        self.entries.iter().map(|(e, &m)| (e, m))
    }

    /// One entry per copy, in sorted order; the position is the edge id.
    pub fn units(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.len);
        for (e, m) in self.iter() {
            for _ in 0..m {
                out.push(*e);
            }
        }
        out
    }

    /// Multiset sum.
    pub fn union(&self, other: &EdgeMultiset) -> EdgeMultiset {
        let mut out = self.clone();
        for (e, m) in other.iter() {
            out.insert_n(*e, m);
        }
        out
    }

    /// Multiset difference; multiplicities saturate at zero.
    pub fn difference(&self, other: &EdgeMultiset) -> EdgeMultiset {
        let mut out = EdgeMultiset::new();
        for (e, m) in self.iter() {
            let keep = m.saturating_sub(other.count(e));
            out.insert_n(*e, keep);
        }
        out
    }

    /// True if every edge of `other` occurs here at least as often.
    pub fn contains_all(&self, other: &EdgeMultiset) -> bool {
        other.iter().all(|(e, m)| self.count(e) >= m)
    }

    /// First edge of `other` not covered by `self`, if any.
    pub fn first_missing(&self, other: &EdgeMultiset) -> Option<Edge> {
        other
            .iter()
            .find(|(e, m)| self.count(e) < *m)
            .map(|(e, _)| *e)
    }

    /// Vertices incident to at least one edge, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.entries.keys().flat_map(|e| [e.u, e.v]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// One past the largest vertex id, or 0 when empty.
    pub fn vertex_bound(&self) -> usize {
        self.entries.keys().map(|e| e.v + 1).max().unwrap_or(0)
    }

    /// Degree of every vertex below `vertex_bound`; loops count 2.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_bound()];
        for (e, m) in self.iter() {
            deg[e.u] += m;
            deg[e.v] += m;
        }
        deg
    }

    /// Copies of edges incident to `x`, loops included.
    pub fn incident(&self, x: usize) -> EdgeMultiset {
        let mut out = EdgeMultiset::new();
        for (e, m) in self.iter() {
            if e.touches(x) {
                out.insert_n(*e, m);
            }
        }
        out
    }

    /// Relabels endpoints; weights are kept.
    pub fn map_vertices(&self, f: impl Fn(usize) -> usize) -> EdgeMultiset {
        let mut out = EdgeMultiset::new();
        for (e, m) in self.iter() {
            out.insert_n(e.map(&f), m);
        }
        out
    }

    /// Replaces every weight by `f(edge)`.
    pub fn reweight(&self, f: impl Fn(&Edge) -> u64) -> EdgeMultiset {
        let mut out = EdgeMultiset::new();
        for (e, m) in self.iter() {
            out.insert_n(Edge::new(e.u, e.v, f(e)), m);
        }
        out
    }
}

impl FromIterator<Edge> for EdgeMultiset {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        let mut out = EdgeMultiset::new();
        for e in iter {
            out.insert(e);
        }
        out
    }
}

impl Extend<Edge> for EdgeMultiset {
    fn extend<I: IntoIterator<Item = Edge>>(&mut self, iter: I) {
        for e in iter {
            self.insert(e);
        }
    }
}

/// Undirected multigraph on vertices `0..vertex_count`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightedMultigraph {
    vertex_count: usize,
    edges: EdgeMultiset,
}

impl WeightedMultigraph {
    pub fn new(vertex_count: usize, edges: EdgeMultiset) -> Result<Self> {
        if let Some(e) = edges.iter().map(|(e, _)| e).find(|e| e.v >= vertex_count) {
            return Err(Error::VertexOutOfRange {
                vertex: e.v,
                count: vertex_count,
            });
        }
        Ok(WeightedMultigraph {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &EdgeMultiset {
        &self.edges
    }

    /// Sorted adjacency over unit edges: `(neighbour, edge id, weight)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize, u64)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (id, e) in self.edges.units().iter().enumerate() {
            adj[e.u].push((e.v, id, e.weight));
            if !e.is_loop() {
                adj[e.v].push((e.u, id, e.weight));
            }
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(w, id, _)| (w, id));
        }
        adj
    }
}

/// Adjacency of the unit edges of a multiset, indexed by vertex, sorted by
/// (neighbour, edge id). A loop appears once in its vertex's list.
pub(crate) fn unit_adjacency(units: &[Edge], bound: usize) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); bound];
    for (id, e) in units.iter().enumerate() {
        adj[e.u].push((e.v, id));
        if !e.is_loop() {
            adj[e.v].push((e.u, id));
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

/// Component labelling of an edge-induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    id: Vec<Option<usize>>,
    count: usize,
}

impl Components {
    /// Component of `v`, or `None` if `v` touches no edge.
    pub fn of(&self, v: usize) -> Option<usize> {
        self.id.get(v).copied().flatten()
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Vertex lists per component, each ascending; components are numbered
    /// by their smallest vertex.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, c) in self.id.iter().enumerate() {
            if let Some(c) = c {
                out[*c].push(v);
            }
        }
        out
    }
}

/// Connected components of G⟨edges⟩; isolated vertices are not labelled.
pub fn connected_components(edges: &EdgeMultiset) -> Components {
    let bound = edges.vertex_bound();
    let mut adj = vec![Vec::new(); bound];
    let mut present = vec![false; bound];
    for (e, _) in edges.iter() {
        present[e.u] = true;
        present[e.v] = true;
        if !e.is_loop() {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
    }
    let mut id = vec![None; bound];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in 0..bound {
        if !present[s] || id[s].is_some() {
            continue;
        }
        id[s] = Some(count);
        stack.push(s);
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if id[y].is_none() {
                    id[y] = Some(count);
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    Components { id, count }
}

/// Odd-degree vertices of G⟨edges⟩, ascending.
pub fn imbalanced_vertices(edges: &EdgeMultiset) -> Vec<usize> {
    edges
        .degrees()
        .iter()
        .enumerate()
        .filter(|(_, d)| *d % 2 == 1)
        .map(|(v, _)| v)
        .collect()
}

/// Blocks of an edge-induced subgraph and the cut vertices between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCutTree {
    /// Vertex set of every block, ascending.
    pub blocks: Vec<Vec<usize>>,
    /// Edges of every block; each source edge copy lies in exactly one.
    pub block_edges: Vec<EdgeMultiset>,
    pub cut_vertices: Vec<usize>,
    /// Pairs (block index, cut vertex) with the cut vertex in the block.
    pub incidence: Vec<(usize, usize)>,
    vertex_blocks: Vec<Vec<usize>>,
}

impl BlockCutTree {
    /// Indices of the blocks containing `v`.
    pub fn blocks_of(&self, v: usize) -> &[usize] {
        self.vertex_blocks
            .get(v)
            .map(|b| b.as_slice())
            .unwrap_or(&[])
    }

    pub fn is_cut_vertex(&self, v: usize) -> bool {
        self.blocks_of(v).len() >= 2
    }
}

/// Block-cut tree of a connected edge-induced subgraph.
pub fn block_cut_tree(edges: &EdgeMultiset) -> Result<BlockCutTree> {
    let comps = connected_components(edges);
    if comps.count() > 1 {
        let members = comps.members();
        return Err(Error::Disconnected(members[0][0], members[1][0]));
    }
    Ok(blocks(edges))
}

/// Blocks of every component at once. Loops do not affect biconnectivity:
/// a loop joins the first block holding its vertex, and a vertex carrying
/// only loops forms a singleton block.
pub(crate) fn blocks(edges: &EdgeMultiset) -> BlockCutTree {
    let units = edges.units();
    let bound = edges.vertex_bound();
    let adj = unit_adjacency(&units, bound);
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; bound];
    let mut low = vec![0usize; bound];
    let mut time = 0;
    let mut block_units: Vec<Vec<usize>> = Vec::new();
    let mut edge_stack: Vec<usize> = Vec::new();
    // frame: (vertex, edge id used to enter, next adjacency index)
    let mut frames: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..bound {
        if disc[root] != UNSEEN || adj[root].iter().all(|&(w, _)| w == root) {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        frames.push((root, UNSEEN, 0));
        while let Some(frame) = frames.last_mut() {
            let (v, parent_edge, idx) = *frame;
            if idx < adj[v].len() {
                frame.2 += 1;
                let (w, eid) = adj[v][idx];
                if eid == parent_edge || w == v {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push(eid);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, eid, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(eid);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(p, _, _)) = frames.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(eid) = edge_stack.pop() {
                            block.push(eid);
                            if eid == parent_edge {
                                break;
                            }
                        }
                        block_units.push(block);
                    }
                }
            }
        }
    }

    let mut blocks: Vec<Vec<usize>> = block_units
        .iter()
        .map(|b| {
            let mut vs: Vec<usize> = b
                .iter()
                .flat_map(|&id| [units[id].u, units[id].v])
                .collect();
            vs.sort_unstable();
            vs.dedup();
            vs
        })
        .collect();
    let mut vertex_blocks = vec![Vec::new(); bound];
    for (i, vs) in blocks.iter().enumerate() {
        for &v in vs {
            vertex_blocks[v].push(i);
        }
    }
    for (id, e) in units.iter().enumerate() {
        if !e.is_loop() {
            continue;
        }
        let b = match vertex_blocks[e.u].first() {
            Some(&b) => b,
            None => {
                blocks.push(vec![e.u]);
                block_units.push(Vec::new());
                vertex_blocks[e.u].push(blocks.len() - 1);
                blocks.len() - 1
            }
        };
        block_units[b].push(id);
    }
    let block_edges = block_units
        .iter()
        .map(|b| b.iter().map(|&id| units[id]).collect())
        .collect();
    let cut_vertices: Vec<usize> = (0..bound)
        .filter(|&v| vertex_blocks[v].len() >= 2)
        .collect();
    let mut incidence = Vec::new();
    for &c in &cut_vertices {
        for &b in &vertex_blocks[c] {
            incidence.push((b, c));
        }
    }
    incidence.sort_unstable();
    BlockCutTree {
        blocks,
        block_edges,
        cut_vertices,
        incidence,
        vertex_blocks,
    }
}

/// A closed walk given by its vertex sequence (first equals last) and the
/// edge taken at every step. The empty walk has no vertices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClosedWalk {
    vertices: Vec<usize>,
    edges: Vec<Edge>,
}

impl ClosedWalk {
    pub fn new(vertices: Vec<usize>, edges: Vec<Edge>) -> Result<Self> {
        use alloc::format;
        if vertices.is_empty() && edges.is_empty() {
            return Ok(ClosedWalk::default());
        }
        if vertices.len() != edges.len() + 1 {
            return Err(Error::MalformedWalk(format!(
                "{} vertices for {} edges",
                vertices.len(),
                edges.len()
            )));
        }
        if vertices.first() != vertices.last() {
            return Err(Error::MalformedWalk("walk is not closed".into()));
        }
        for (i, e) in edges.iter().enumerate() {
            let (a, b) = (vertices[i], vertices[i + 1]);
            if Edge::new(a, b, e.weight) != *e {
                return Err(Error::MalformedWalk(format!(
                    "step {i} does not join {a} and {b}"
                )));
            }
        }
        Ok(ClosedWalk { vertices, edges })
    }

    /// Builds a walk from its steps, starting at `start`.
    pub fn from_steps(start: usize, steps: &[Edge]) -> Result<Self> {
        if steps.is_empty() {
            return Ok(ClosedWalk::default());
        }
        let mut vertices = Vec::with_capacity(steps.len() + 1);
        vertices.push(start);
        let mut at = start;
        for (i, e) in steps.iter().enumerate() {
            if !e.touches(at) {
                return Err(Error::MalformedWalk(alloc::format!(
                    "step {i} does not leave {at}"
                )));
            }
            at = e.other(at);
            vertices.push(at);
        }
        ClosedWalk::new(vertices, steps.to_vec())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// The walk's edges as a multiset.
    pub fn edge_multiset(&self) -> EdgeMultiset {
        self.edges.iter().copied().collect()
    }
}

/// Hierholzer tour of a balanced connected edge multiset, starting at the
/// smallest vertex and always taking the smallest unused (neighbour, edge id).
pub fn euler_tour(edges: &EdgeMultiset) -> Result<ClosedWalk> {
    if edges.is_empty() {
        return Ok(ClosedWalk::default());
    }
    if let Some(&v) = imbalanced_vertices(edges).first() {
        return Err(Error::Imbalanced(v));
    }
    let comps = connected_components(edges);
    if comps.count() > 1 {
        let members = comps.members();
        return Err(Error::Disconnected(members[0][0], members[1][0]));
    }
    let units = edges.units();
    let adj = unit_adjacency(&units, edges.vertex_bound());
    let mut used = vec![false; units.len()];
    let mut next = vec![0usize; adj.len()];
    let start = units[0].u;
    let mut stack: Vec<(usize, Option<usize>)> = vec![(start, None)];
    let mut circuit: Vec<(usize, Option<usize>)> = Vec::with_capacity(units.len() + 1);
    while let Some(&(v, _)) = stack.last() {
        while next[v] < adj[v].len() && used[adj[v][next[v]].1] {
            next[v] += 1;
        }
        if next[v] < adj[v].len() {
            let (w, id) = adj[v][next[v]];
            used[id] = true;
            stack.push((w, Some(id)));
        } else {
            circuit.push(stack.pop().expect("non-empty stack"));
        }
    }
    circuit.reverse();
    let vertices = circuit.iter().map(|&(v, _)| v).collect();
    let steps = circuit
        .iter()
        .skip(1)
        .map(|&(_, id)| units[id.expect("step edge")])
        .collect();
    ClosedWalk::new(vertices, steps)
}
