//! Minimum-weight perfect matching on a complete graph, and the greedy
//! matching used during vertex extraction.
//!
//! The exact matching runs the O(n³) primal-dual blossom algorithm of
//! Edmonds in Galil's formulation, following Joris van Rantwijk's reference
//! implementation: vertices `0..n`, non-trivial blossoms `n..2n`, edge
//! endpoints `2k` and `2k+1` for edge `k`, and dual variables stored doubled
//! so every quantity stays integral.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A set of disjoint vertex pairs with their summed cost.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    /// Pairs `(a, b)` with `a < b`, sorted.
    pub pairs: Vec<(usize, usize)>,
    pub total_weight: u64,
}

impl Matching {
    fn from_pairs(mut pairs: Vec<(usize, usize)>, cost: impl Fn(usize, usize) -> u64) -> Self {
        for p in &mut pairs {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        let total_weight = pairs.iter().map(|&(a, b)| cost(a, b)).sum();
        Matching {
            pairs,
            total_weight,
        }
    }
}

/// Minimum-weight perfect matching of `vertices` under a symmetric cost.
pub fn min_weight_perfect_matching(
    vertices: &[usize],
    cost: impl Fn(usize, usize) -> u64,
) -> Result<Matching> {
    let n = vertices.len();
    if n % 2 == 1 {
        return Err(Error::OddCardinality(n));
    }
    if n == 0 {
        return Ok(Matching::default());
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    let mut max_cost = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            let c = cost(vertices[i], vertices[j]);
            max_cost = max_cost.max(c);
            edges.push((i, j, c));
        }
    }
    // maximise sum(top - c) over maximum-cardinality (= perfect) matchings
    let top = i64::try_from(max_cost).expect("cost fits in i64") + 1;
    let edges: Vec<(usize, usize, i64)> = edges
        .into_iter()
        .map(|(i, j, c)| (i, j, top - c as i64))
        .collect();
    let mate = max_weight_matching(n, &edges, true);
    let mut pairs = Vec::with_capacity(n / 2);
    for (i, m) in mate.iter().enumerate() {
        let j = m.expect("complete graph on an even vertex count has a perfect matching");
        if i < j {
            pairs.push((vertices[i], vertices[j]));
        }
    }
    Ok(Matching::from_pairs(pairs, cost))
}

/// Pairs consecutive vertices in ascending id order.
pub fn greedy_matching(vertices: &[usize], cost: impl Fn(usize, usize) -> u64) -> Result<Matching> {
    if vertices.len() % 2 == 1 {
        return Err(Error::OddCardinality(vertices.len()));
    }
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    let pairs = sorted.chunks(2).map(|p| (p[0], p[1])).collect();
    Ok(Matching::from_pairs(pairs, cost))
}

const NIL: usize = usize::MAX;

/// Maximum-weight matching on vertices `0..n` given simple edges
/// `(i, j, weight)` with `i != j`. With `max_cardinality`, only matchings of
/// maximum cardinality are considered. Returns the partner of every vertex.
pub fn max_weight_matching(
    n: usize,
    edges: &[(usize, usize, i64)],
    max_cardinality: bool,
) -> Vec<Option<usize>> {
    if edges.is_empty() || n == 0 {
        return vec![None; n];
    }
    let mut b = Blossom::new(n, edges, max_cardinality);
    b.solve();
    b.mate
        .iter()
        .map(|&p| if p == NIL { None } else { Some(b.endpoint[p]) })
        .collect()
}

struct Blossom<'a> {
    n: usize,
    edges: &'a [(usize, usize, i64)],
    max_cardinality: bool,
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<usize>,
    label: Vec<u8>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Option<Vec<usize>>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<i64>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

impl<'a> Blossom<'a> {
    fn new(n: usize, edges: &'a [(usize, usize, i64)], max_cardinality: bool) -> Self {
        let m = edges.len();
        let maxweight = edges.iter().map(|e| e.2).max().unwrap_or(0).max(0);
        let mut endpoint = Vec::with_capacity(2 * m);
        let mut neighbend = vec![Vec::new(); n];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            assert!(
                i != j && i < n && j < n,
                "edge endpoints must be distinct vertices"
            );
            endpoint.push(i);
            endpoint.push(j);
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        let mut blossombase: Vec<usize> = (0..n).collect();
        blossombase.extend(core::iter::repeat_n(NIL, n));
        let mut dualvar = vec![maxweight; n];
        dualvar.extend(core::iter::repeat_n(0, n));
        Blossom {
            n,
            edges,
            max_cardinality,
            endpoint,
            neighbend,
            mate: vec![NIL; n],
            label: vec![0; 2 * n],
            labelend: vec![NIL; 2 * n],
            inblossom: (0..n).collect(),
            blossomparent: vec![NIL; 2 * n],
            blossomchilds: vec![Vec::new(); 2 * n],
            blossombase,
            blossomendps: vec![Vec::new(); 2 * n],
            bestedge: vec![NIL; 2 * n],
            blossombestedges: vec![None; 2 * n],
            unusedblossoms: (n..2 * n).rev().collect(),
            dualvar,
            allowedge: vec![false; m],
            queue: Vec::new(),
        }
    }

    /// Twice the slack of edge `k`.
    fn slack(&self, k: usize) -> i64 {
        let (i, j, w) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 2 * w
    }

    fn leaves(&self, b: usize, out: &mut Vec<usize>) {
        if b < self.n {
            out.push(b);
        } else {
            for &t in &self.blossomchilds[b] {
                self.leaves(t, out);
            }
        }
    }

    fn blossom_leaves(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.leaves(b, &mut out);
        out
    }

    fn assign_label(&mut self, w: usize, t: u8, p: usize) {
        let b = self.inblossom[w];
        debug_assert!(self.label[w] == 0 && self.label[b] == 0);
        self.label[w] = t;
        self.label[b] = t;
        self.labelend[w] = p;
        self.labelend[b] = p;
        self.bestedge[w] = NIL;
        self.bestedge[b] = NIL;
        if t == 1 {
            let leaves = self.blossom_leaves(b);
            self.queue.extend(leaves);
        } else {
            // a T-blossom's base is matched; its mate becomes S
            let base = self.blossombase[b];
            let mbase = self.mate[base];
            debug_assert!(mbase != NIL);
            self.assign_label(self.endpoint[mbase], 1, mbase ^ 1);
        }
    }

    /// Traces back from `v` and `w`; returns the base of a new blossom, or
    /// NIL when the two paths end at distinct single vertices.
    fn scan_blossom(&mut self, mut v: usize, mut w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NIL;
        while v != NIL || w != NIL {
            let mut b = self.inblossom[v];
            if self.label[b] & 4 != 0 {
                base = self.blossombase[b];
                break;
            }
            path.push(b);
            self.label[b] = 5;
            if self.labelend[b] == NIL {
                v = NIL;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                v = self.endpoint[self.labelend[b]];
            }
            if w != NIL {
                core::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.label[b] = 1;
        }
        base
    }

    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("blossom slot available");
        self.blossombase[b] = base;
        self.blossomparent[b] = NIL;
        self.blossomparent[bb] = b;
        let mut childs = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = b;
            childs.push(bv);
            endps.push(self.labelend[bv]);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        childs.push(bb);
        childs.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = b;
            childs.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }
        self.blossomchilds[b] = childs;
        self.blossomendps[b] = endps;
        self.label[b] = 1;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;
        for v in self.blossom_leaves(b) {
            if self.label[self.inblossom[v]] == 2 {
                self.queue.push(v);
            }
            self.inblossom[v] = b;
        }

        let mut bestedgeto = vec![NIL; 2 * self.n];
        for idx in 0..self.blossomchilds[b].len() {
            let bv = self.blossomchilds[b][idx];
            let lists: Vec<Vec<usize>> = match self.blossombestedges[bv].take() {
                Some(list) => vec![list],
                None => self
                    .blossom_leaves(bv)
                    .into_iter()
                    .map(|v| self.neighbend[v].iter().map(|p| p / 2).collect())
                    .collect(),
            };
            for list in lists {
                for k in list {
                    let (mut i, mut j, _) = self.edges[k];
                    if self.inblossom[j] == b {
                        core::mem::swap(&mut i, &mut j);
                    }
                    let _ = i;
                    let bj = self.inblossom[j];
                    if bj != b
                        && self.label[bj] == 1
                        && (bestedgeto[bj] == NIL || self.slack(k) < self.slack(bestedgeto[bj]))
                    {
                        bestedgeto[bj] = k;
                    }
                }
            }
            self.bestedge[bv] = NIL;
        }
        let list: Vec<usize> = bestedgeto.into_iter().filter(|&k| k != NIL).collect();
        let mut best = NIL;
        for &k in &list {
            if best == NIL || self.slack(k) < self.slack(best) {
                best = k;
            }
        }
        self.blossombestedges[b] = Some(list);
        self.bestedge[b] = best;
    }

    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        for s in self.blossomchilds[b].clone() {
            self.blossomparent[s] = NIL;
            if s < self.n {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for v in self.blossom_leaves(s) {
                    self.inblossom[v] = s;
                }
            }
        }

        if !endstage && self.label[b] == 2 {
            // relabel the sub-blossoms on the even-length path from the
            // entry child to the base
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let len = self.blossomchilds[b].len() as isize;
            let mut j = self.blossomchilds[b]
                .iter()
                .position(|&c| c == entrychild)
                .expect("entry child") as isize;
            let (jstep, endptrick): (isize, usize) = if j & 1 != 0 {
                j -= len;
                (1, 0)
            } else {
                (-1, 1)
            };
            let at = |v: &Vec<usize>, i: isize| v[i.rem_euclid(v.len() as isize) as usize];
            let mut p = self.labelend[b];
            while j != 0 {
                let q = at(&self.blossomendps[b], j - endptrick as isize);
                self.label[self.endpoint[p ^ 1]] = 0;
                self.label[self.endpoint[q ^ endptrick ^ 1]] = 0;
                self.assign_label(self.endpoint[p ^ 1], 2, p);
                self.allowedge[q / 2] = true;
                j += jstep;
                p = at(&self.blossomendps[b], j - endptrick as isize) ^ endptrick;
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            let bv = at(&self.blossomchilds[b], j);
            let ep = self.endpoint[p ^ 1];
            self.label[ep] = 2;
            self.label[bv] = 2;
            self.labelend[ep] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NIL;
            j += jstep;
            while at(&self.blossomchilds[b], j) != entrychild {
                let bv = at(&self.blossomchilds[b], j);
                if self.label[bv] == 1 {
                    j += jstep;
                    continue;
                }
                let leaves = self.blossom_leaves(bv);
                let reached = leaves.iter().copied().find(|&v| self.label[v] != 0);
                if let Some(v) = reached {
                    debug_assert_eq!(self.label[v], 2);
                    self.label[v] = 0;
                    let mb = self.endpoint[self.mate[self.blossombase[bv]]];
                    self.label[mb] = 0;
                    self.assign_label(v, 2, self.labelend[v]);
                }
                j += jstep;
            }
        }

        self.label[b] = 0;
        self.labelend[b] = NIL;
        self.blossomchilds[b].clear();
        self.blossomendps[b].clear();
        self.blossombase[b] = NIL;
        self.blossombestedges[b] = None;
        self.bestedge[b] = NIL;
        self.unusedblossoms.push(b);
    }

    /// Swaps matched and unmatched edges along the path through blossom `b`
    /// from vertex `v` to the base.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.n {
            self.augment_blossom(t, v);
        }
        let len = self.blossomchilds[b].len() as isize;
        let i = self.blossomchilds[b]
            .iter()
            .position(|&c| c == t)
            .expect("child of blossom");
        let mut j = i as isize;
        let (jstep, endptrick): (isize, usize) = if i & 1 != 0 {
            j -= len;
            (1, 0)
        } else {
            (-1, 1)
        };
        let at = |v: &Vec<usize>, i: isize| v[i.rem_euclid(v.len() as isize) as usize];
        while j != 0 {
            j += jstep;
            let t = at(&self.blossomchilds[b], j);
            let p = at(&self.blossomendps[b], j - endptrick as isize) ^ endptrick;
            if t >= self.n {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = at(&self.blossomchilds[b], j);
            if t >= self.n {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], v);
    }

    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (mut s, mut p) in [(v, 2 * k + 1), (w, 2 * k)] {
            loop {
                let bs = self.inblossom[s];
                if bs >= self.n {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NIL {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                if bt >= self.n {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    fn solve(&mut self) {
        let n = self.n;
        for _ in 0..n {
            self.label.iter_mut().for_each(|l| *l = 0);
            self.bestedge.iter_mut().for_each(|e| *e = NIL);
            for b in n..2 * n {
                self.blossombestedges[b] = None;
            }
            self.allowedge.iter_mut().for_each(|a| *a = false);
            self.queue.clear();
            for v in 0..n {
                if self.mate[v] == NIL && self.label[self.inblossom[v]] == 0 {
                    self.assign_label(v, 1, NIL);
                }
            }

            let mut augmented = false;
            loop {
                while let Some(v) = self.queue.pop() {
                    for idx in 0..self.neighbend[v].len() {
                        let p = self.neighbend[v][idx];
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowedge[k] = true;
                            }
                        }
                        if self.allowedge[k] {
                            if self.label[self.inblossom[w]] == 0 {
                                self.assign_label(w, 2, p ^ 1);
                            } else if self.label[self.inblossom[w]] == 1 {
                                let base = self.scan_blossom(v, w);
                                if base != NIL {
                                    self.add_blossom(base, k);
                                } else {
                                    self.augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if self.label[w] == 0 {
                                self.label[w] = 2;
                                self.labelend[w] = p ^ 1;
                            }
                        } else if self.label[self.inblossom[w]] == 1 {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NIL || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == 0
                            && (self.bestedge[w] == NIL || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                    if augmented {
                        break;
                    }
                }
                if augmented {
                    break;
                }

                // no augmenting path under the current duals: find delta
                let mut deltatype = 0u8;
                let mut delta = 0i64;
                let mut deltaedge = NIL;
                let mut deltablossom = NIL;
                if !self.max_cardinality {
                    deltatype = 1;
                    delta = *self.dualvar[..n].iter().min().expect("non-empty");
                }
                for v in 0..n {
                    if self.label[self.inblossom[v]] == 0 && self.bestedge[v] != NIL {
                        let d = self.slack(self.bestedge[v]);
                        if deltatype == 0 || d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * n {
                    if self.blossomparent[b] == NIL && self.label[b] == 1 && self.bestedge[b] != NIL
                    {
                        let d = self.slack(self.bestedge[b]) / 2;
                        if deltatype == 0 || d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NIL
                        && self.blossomparent[b] == NIL
                        && self.label[b] == 2
                        && (deltatype == 0 || self.dualvar[b] < delta)
                    {
                        delta = self.dualvar[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if deltatype == 0 {
                    // maximum cardinality reached; final update keeps duals feasible
                    deltatype = 1;
                    delta = (*self.dualvar[..n].iter().min().expect("non-empty")).max(0);
                }

                for v in 0..n {
                    match self.label[self.inblossom[v]] {
                        1 => self.dualvar[v] -= delta,
                        2 => self.dualvar[v] += delta,
                        _ => {}
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NIL && self.blossomparent[b] == NIL {
                        match self.label[b] {
                            1 => self.dualvar[b] += delta,
                            2 => self.dualvar[b] -= delta,
                            _ => {}
                        }
                    }
                }

                match deltatype {
                    1 => break,
                    2 => {
                        self.allowedge[deltaedge] = true;
                        let (mut i, j, _) = self.edges[deltaedge];
                        if self.label[self.inblossom[i]] == 0 {
                            i = j;
                        }
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[deltaedge] = true;
                        let (i, _, _) = self.edges[deltaedge];
                        self.queue.push(i);
                    }
                    _ => self.expand_blossom(deltablossom, false),
                }
            }

            if !augmented {
                break;
            }
            for b in n..2 * n {
                if self.blossomparent[b] == NIL
                    && self.blossombase[b] != NIL
                    && self.label[b] == 1
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec;

    fn mate(n: usize, edges: &[(usize, usize, i64)], maxcard: bool) -> Vec<Option<usize>> {
        max_weight_matching(n, edges, maxcard)
    }

    fn some(v: &[i64]) -> Vec<Option<usize>> {
        v.iter()
            .map(|&x| if x < 0 { None } else { Some(x as usize) })
            .collect()
    }

    // cases from the reference implementation's test-suite
    #[test]
    fn reference_cases() {
        assert_eq!(mate(2, &[(0, 1, 1)], false), some(&[1, 0]));
        assert_eq!(
            mate(4, &[(1, 2, 10), (2, 3, 11)], false),
            some(&[-1, -1, 3, 2])
        );
        assert_eq!(
            mate(5, &[(1, 2, 5), (2, 3, 11), (3, 4, 5)], false),
            some(&[-1, -1, 3, 2, -1])
        );
        assert_eq!(
            mate(5, &[(1, 2, 5), (2, 3, 11), (3, 4, 5)], true),
            some(&[-1, 2, 1, 4, 3])
        );
        assert_eq!(
            mate(
                5,
                &[(1, 2, 2), (1, 3, -2), (2, 3, 1), (2, 4, -1), (3, 4, -6)],
                false
            ),
            some(&[-1, 2, 1, -1, -1])
        );
        assert_eq!(
            mate(
                5,
                &[(1, 2, 2), (1, 3, -2), (2, 3, 1), (2, 4, -1), (3, 4, -6)],
                true
            ),
            some(&[-1, 3, 4, 1, 2])
        );
        // S-blossom and augment
        assert_eq!(
            mate(5, &[(1, 2, 8), (1, 3, 9), (2, 3, 10), (3, 4, 7)], false),
            some(&[-1, 2, 1, 4, 3])
        );
        assert_eq!(
            mate(
                7,
                &[
                    (1, 2, 8),
                    (1, 3, 9),
                    (2, 3, 10),
                    (3, 4, 7),
                    (1, 6, 5),
                    (4, 5, 6)
                ],
                false
            ),
            some(&[-1, 6, 3, 2, 5, 4, 1])
        );
        // S-blossom, relabel as T, expand
        assert_eq!(
            mate(
                7,
                &[
                    (1, 2, 9),
                    (1, 3, 8),
                    (2, 3, 10),
                    (1, 4, 5),
                    (4, 5, 4),
                    (1, 6, 3)
                ],
                false
            ),
            some(&[-1, 6, 3, 2, 5, 4, 1])
        );
        assert_eq!(
            mate(
                7,
                &[
                    (1, 2, 9),
                    (1, 3, 8),
                    (2, 3, 10),
                    (1, 4, 5),
                    (4, 5, 3),
                    (1, 6, 4)
                ],
                false
            ),
            some(&[-1, 6, 3, 2, 5, 4, 1])
        );
        assert_eq!(
            mate(
                7,
                &[
                    (1, 2, 9),
                    (1, 3, 8),
                    (2, 3, 10),
                    (1, 4, 5),
                    (4, 5, 3),
                    (3, 6, 4)
                ],
                false
            ),
            some(&[-1, 2, 1, 6, 5, 4, 3])
        );
        // nested S-blossom, relabel, expand
        assert_eq!(
            mate(
                7,
                &[
                    (1, 2, 9),
                    (1, 3, 9),
                    (2, 3, 10),
                    (2, 4, 8),
                    (3, 5, 8),
                    (4, 5, 10),
                    (5, 6, 6)
                ],
                false
            ),
            some(&[-1, 3, 4, 1, 2, 6, 5])
        );
        assert_eq!(
            mate(
                9,
                &[
                    (1, 2, 10),
                    (1, 7, 10),
                    (2, 3, 12),
                    (3, 4, 20),
                    (3, 5, 20),
                    (4, 5, 25),
                    (5, 6, 10),
                    (6, 7, 10),
                    (7, 8, 8)
                ],
                false
            ),
            some(&[-1, 2, 1, 4, 3, 6, 5, 8, 7])
        );
        // nested S-blossom expands recursively
        assert_eq!(
            mate(
                9,
                &[
                    (1, 2, 8),
                    (1, 3, 8),
                    (2, 3, 10),
                    (2, 4, 12),
                    (3, 5, 12),
                    (4, 5, 14),
                    (4, 6, 12),
                    (5, 7, 12),
                    (6, 7, 14),
                    (7, 8, 12)
                ],
                false
            ),
            some(&[-1, 2, 1, 5, 6, 3, 4, 8, 7])
        );
        // T-blossom expansion with S to T
        assert_eq!(
            mate(
                9,
                &[
                    (1, 2, 23),
                    (1, 5, 22),
                    (1, 6, 15),
                    (2, 3, 25),
                    (3, 4, 22),
                    (4, 5, 25),
                    (4, 8, 14),
                    (5, 7, 13)
                ],
                false
            ),
            some(&[-1, 6, 3, 2, 8, 7, 1, 5, 4])
        );
        // nasty T-blossom expansions
        assert_eq!(
            mate(
                11,
                &[
                    (1, 2, 45),
                    (1, 5, 45),
                    (2, 3, 50),
                    (3, 4, 45),
                    (4, 5, 50),
                    (1, 6, 30),
                    (3, 9, 35),
                    (4, 8, 35),
                    (5, 7, 26),
                    (9, 10, 5)
                ],
                false
            ),
            some(&[-1, 6, 3, 2, 8, 7, 1, 5, 4, 10, 9])
        );
        assert_eq!(
            mate(
                11,
                &[
                    (1, 2, 45),
                    (1, 5, 45),
                    (2, 3, 50),
                    (3, 4, 45),
                    (4, 5, 50),
                    (1, 6, 30),
                    (3, 9, 35),
                    (4, 8, 26),
                    (5, 7, 40),
                    (9, 10, 5)
                ],
                false
            ),
            some(&[-1, 6, 3, 2, 8, 7, 1, 5, 4, 10, 9])
        );
        assert_eq!(
            mate(
                11,
                &[
                    (1, 2, 45),
                    (1, 5, 45),
                    (2, 3, 50),
                    (3, 4, 45),
                    (4, 5, 50),
                    (1, 6, 30),
                    (3, 9, 35),
                    (4, 8, 28),
                    (5, 7, 26),
                    (9, 10, 5)
                ],
                false
            ),
            some(&[-1, 6, 3, 2, 8, 7, 1, 5, 4, 10, 9])
        );
        assert_eq!(
            mate(
                9,
                &[
                    (1, 2, 19),
                    (1, 3, 20),
                    (1, 8, 8),
                    (2, 3, 25),
                    (2, 4, 18),
                    (3, 5, 18),
                    (4, 5, 13),
                    (4, 7, 7),
                    (5, 6, 7)
                ],
                false
            ),
            some(&[-1, 8, 3, 2, 7, 6, 5, 4, 1])
        );
        assert_eq!(
            mate(
                13,
                &[
                    (1, 2, 45),
                    (1, 7, 45),
                    (2, 3, 50),
                    (3, 4, 45),
                    (4, 5, 95),
                    (4, 6, 94),
                    (5, 6, 94),
                    (6, 7, 50),
                    (1, 8, 30),
                    (3, 11, 35),
                    (5, 9, 36),
                    (7, 10, 26),
                    (11, 12, 5)
                ],
                false
            ),
            some(&[-1, 8, 3, 2, 6, 9, 4, 10, 1, 5, 7, 12, 11])
        );
        assert_eq!(
            mate(
                11,
                &[
                    (1, 2, 40),
                    (1, 3, 40),
                    (2, 3, 60),
                    (2, 4, 55),
                    (3, 5, 55),
                    (4, 5, 50),
                    (1, 8, 15),
                    (5, 7, 30),
                    (7, 6, 10),
                    (8, 10, 10),
                    (4, 9, 30)
                ],
                false
            ),
            some(&[-1, 2, 1, 5, 9, 3, 7, 6, 10, 4, 8])
        );
    }

    #[test]
    fn small_examples() {
        let m = min_weight_perfect_matching(&[3, 8], |_, _| 7).unwrap();
        assert_eq!(
            m,
            Matching {
                pairs: vec![(3, 8)],
                total_weight: 7
            }
        );

        let pos = [0u64, 1, 10, 11];
        let m = min_weight_perfect_matching(&[0, 1, 2, 3], |a, b| pos[a].abs_diff(pos[b])).unwrap();
        assert_eq!(m.pairs, vec![(0, 1), (2, 3)]);
        assert_eq!(m.total_weight, 2);

        assert_eq!(
            min_weight_perfect_matching(&[], |_, _| 1).unwrap(),
            Matching::default()
        );
        assert_eq!(
            min_weight_perfect_matching(&[1, 2, 3], |_, _| 1),
            Err(Error::OddCardinality(3))
        );
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(
            greedy_matching(&[3, 1, 4, 2], |_, _| 0).unwrap().pairs,
            vec![(1, 2), (3, 4)]
        );
        assert_eq!(greedy_matching(&[5, 9], |_, _| 2).unwrap().total_weight, 2);
        assert!(greedy_matching(&[], |_, _| 0).unwrap().pairs.is_empty());
        assert_eq!(
            greedy_matching(&[1], |_, _| 0),
            Err(Error::OddCardinality(1))
        );
    }
}
