#![allow(dead_code)]

use proptest::collection::vec;
use proptest::prelude::*;
use rppk_core::graph::{Edge, EdgeMultiset};
use rppk_core::metric::{DistanceMatrix, MetricRpp};

/// All-pairs shortest paths by Floyd-Warshall on a dense weight table.
pub fn floyd(n: usize, w: &[u64]) -> Vec<u64> {
    let mut d = w.to_vec();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i * n + k].saturating_add(d[k * n + j]);
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
    d
}

/// Complete graph with the given upper-triangle weights, closed metrically.
pub fn metric_from_pairs(n: usize, pair_w: &[u64]) -> DistanceMatrix {
    let mut w = vec![0u64; n * n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            w[i * n + j] = pair_w[k];
            w[j * n + i] = pair_w[k];
            k += 1;
        }
    }
    let d = floyd(n, &w);
    DistanceMatrix::new(n, d).unwrap()
}

/// Small random metric RPP instances: up to `max_n` vertices, required
/// edges weighted at their distance plus a small surcharge.
pub fn small_metric_rpp(max_n: usize, max_req: usize) -> impl Strategy<Value = MetricRpp> {
    (2usize..=max_n)
        .prop_flat_map(move |n| {
            (
                Just(n),
                vec(1u64..=20, n * (n - 1) / 2),
                vec((0..n, 0..n, 0u64..=2, 1usize..=2), 1..=max_req),
            )
        })
        .prop_map(|(n, pw, req)| {
            let d = metric_from_pairs(n, &pw);
            let mut r = EdgeMultiset::new();
            for (a, b, extra, m) in req {
                let base = if a == b { 3 } else { d.get(a, b) };
                r.insert_n(Edge::new(a, b, base + extra), m);
            }
            MetricRpp::new(d, r).unwrap()
        })
}

/// Like [`small_metric_rpp`] but without loops or surcharges.
pub fn plain_metric_rpp(max_n: usize, max_req: usize) -> impl Strategy<Value = MetricRpp> {
    (2usize..=max_n)
        .prop_flat_map(move |n| {
            (
                Just(n),
                vec(1u64..=20, n * (n - 1) / 2),
                vec((0..n, 0..n), 1..=max_req),
            )
        })
        .prop_map(|(n, pw, req)| {
            let d = metric_from_pairs(n, &pw);
            let r = req
                .into_iter()
                .filter(|(a, b)| a != b)
                .map(|(a, b)| d.edge(a, b))
                .collect();
            MetricRpp::new(d, r).unwrap()
        })
}

/// Minimum perfect matching cost by trying every pairing.
pub fn brute_matching(vs: &[usize], cost: &dyn Fn(usize, usize) -> u64) -> u64 {
    if vs.is_empty() {
        return 0;
    }
    let first = vs[0];
    let mut best = u64::MAX;
    for k in 1..vs.len() {
        let rest: Vec<usize> = vs[1..]
            .iter()
            .enumerate()
            .filter(|&(i, _)| i + 1 != k)
            .map(|(_, &v)| v)
            .collect();
        best = best.min(cost(first, vs[k]) + brute_matching(&rest, cost));
    }
    best
}
