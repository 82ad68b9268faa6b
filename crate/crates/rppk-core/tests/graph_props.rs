mod common;

use common::{brute_matching, floyd, small_metric_rpp};
use proptest::collection::vec;
use proptest::prelude::*;
use rppk_core::graph::{
    block_cut_tree, connected_components, euler_tour, Edge, EdgeMultiset, WeightedMultigraph,
};
use rppk_core::matching::{greedy_matching, min_weight_perfect_matching};
use rppk_core::metric::metric_close;
use rppk_core::solver::approx_32;
use rppk_core::RppInstance;

fn multiset() -> impl Strategy<Value = EdgeMultiset> {
    vec((0usize..8, 0usize..8, 0u64..10), 0..16)
        .prop_map(|es| es.into_iter().map(|(a, b, w)| Edge::new(a, b, w)).collect())
}

/// A connected graph: a random spanning tree plus extra edges.
fn connected_graph() -> impl Strategy<Value = (usize, EdgeMultiset)> {
    (2usize..=9).prop_flat_map(|n| {
        (
            Just(n),
            vec((any::<prop::sample::Index>(), 1u64..15), n - 1),
            vec((0..n, 0..n, 1u64..15), 0..10),
        )
            .prop_map(|(n, tree, extra)| {
                let mut g = EdgeMultiset::new();
                for (v, (parent, w)) in (1..n).zip(tree) {
                    g.insert(Edge::new(parent.index(v), v, w));
                }
                for (a, b, w) in extra {
                    g.insert(Edge::new(a, b, w));
                }
                (n, g)
            })
    })
}

/// Components left among the other vertices of G⟨g⟩ once `v` is removed,
/// counting vertices that become isolated.
fn pieces_without(g: &EdgeMultiset, v: usize) -> usize {
    let verts: Vec<usize> = g.vertices().into_iter().filter(|&x| x != v).collect();
    let rest: EdgeMultiset = g
        .iter()
        .filter(|(e, _)| !e.touches(v))
        .map(|(e, _)| *e)
        .collect();
    let comps = connected_components(&rest);
    let isolated = verts.iter().filter(|&&x| comps.of(x).is_none()).count();
    comps.count() + isolated
}

proptest! {
    #[test]
    fn degree_sum_is_twice_the_edge_count(r in multiset()) {
        let total: usize = r.degrees().iter().sum();
        prop_assert_eq!(total, 2 * r.len());
    }

    #[test]
    fn euler_tour_uses_every_copy_once(inst in small_metric_rpp(7, 8)) {
        let s = approx_32(&inst).unwrap();
        let all = inst.required().union(&s);
        let w = euler_tour(&all).unwrap();
        prop_assert_eq!(w.edge_multiset(), all.clone());
        prop_assert_eq!(w.weight(), all.total_weight());
        prop_assert_eq!(w.vertices().first(), w.vertices().last());
    }

    #[test]
    fn blocks_partition_the_edges((_, g) in connected_graph()) {
        let bct = block_cut_tree(&g).unwrap();
        let mut union = EdgeMultiset::new();
        for b in &bct.block_edges {
            union = union.union(b);
        }
        prop_assert_eq!(union, g.clone());
        for &v in &bct.cut_vertices {
            prop_assert!(bct.blocks_of(v).len() >= 2);
            // removing a cut vertex disconnects its component
            prop_assert!(pieces_without(&g, v) >= 2);
        }
    }

    #[test]
    fn closure_matches_floyd((n, g) in connected_graph()) {
        let mut w = vec![u64::MAX; n * n];
        for i in 0..n {
            w[i * n + i] = 0;
        }
        for (e, _) in g.iter() {
            if !e.is_loop() {
                let k = e.u * n + e.v;
                w[k] = w[k].min(e.weight);
                w[e.v * n + e.u] = w[k];
            }
        }
        let d = floyd(n, &w);
        let graph = WeightedMultigraph::new(n, g.clone()).unwrap();
        let inst = RppInstance::new(graph, EdgeMultiset::new()).unwrap();
        let all: Vec<usize> = (0..n).collect();
        let closure = metric_close(&inst, &all).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(closure.dist().get(i, j), d[i * n + j]);
                let p = closure.path(i, j);
                prop_assert_eq!(p.iter().map(|e| e.weight).sum::<u64>(), d[i * n + j]);
                prop_assert!(p.iter().all(|e| g.count(e) > 0));
            }
        }
    }

    #[test]
    fn expansion_keeps_weight_and_is_idempotent((n, g) in connected_graph(), picks in vec(any::<prop::sample::Index>(), 1..5)) {
        let units = g.units();
        let mut ids: Vec<usize> = picks.iter().map(|p| p.index(units.len())).collect();
        ids.sort_unstable();
        ids.dedup();
        let required: EdgeMultiset = ids.iter().map(|&i| units[i]).filter(|e| !e.is_loop()).collect();
        prop_assume!(!required.is_empty());
        let graph = WeightedMultigraph::new(n, g.clone()).unwrap();
        let inst = RppInstance::new(graph, required).unwrap();
        let all: Vec<usize> = (0..n).collect();
        let closure = metric_close(&inst, &all).unwrap();
        let m = closure.rpp(&inst).unwrap();
        let s = approx_32(&m).unwrap();
        let tour = euler_tour(&m.required().union(&s)).unwrap();
        let walk = closure.expand_walk(&tour).unwrap();
        prop_assert_eq!(walk.weight(), tour.weight());
        prop_assert!(walk.edges().iter().all(|e| g.count(e) > 0));
        prop_assert!(walk.edge_multiset().contains_all(inst.required()));
        prop_assert_eq!(closure.expand_walk(&walk).unwrap(), walk);
    }

    #[test]
    fn blossom_matches_brute_force(costs in vec(0u64..50, 45), half in 0usize..=5) {
        let n = 2 * half;
        let cost = |a: usize, b: usize| {
            let (a, b) = (a.min(b), a.max(b));
            costs[a * 10 - a * (a + 1) / 2 + (b - a - 1)]
        };
        let vs: Vec<usize> = (0..n).collect();
        let m = min_weight_perfect_matching(&vs, cost).unwrap();
        prop_assert_eq!(m.total_weight, brute_matching(&vs, &cost));
        prop_assert_eq!(m.pairs.len(), half);
        let mut seen: Vec<usize> = m.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, vs.clone());
        prop_assert!(m.total_weight <= greedy_matching(&vs, cost).unwrap().total_weight);
    }
}
