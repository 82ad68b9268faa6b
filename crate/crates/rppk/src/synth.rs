//! Synthetic instances: the random geometric `ur` family, a street-grid
//! stand-in at the size of the larger Berlin instance, and small random
//! graphs for the brute-force oracle.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rppk_core::graph::{connected_components, Edge, EdgeMultiset, WeightedMultigraph};
use rppk_core::RppInstance;

fn euclid(a: (i64, i64), b: (i64, i64)) -> u64 {
    let (dx, dy) = ((a.0 - b.0) as f64, (a.1 - b.1) as f64);
    ((dx * dx + dy * dy).sqrt().round() as u64).max(1)
}

/// `n` distinct points of the 1000×1000 grid, each joined to its `d`
/// nearest neighbours with rounded Euclidean lengths; each edge is required
/// with probability `p`. Components of the neighbour graph are joined by
/// their shortest connecting edge so every instance is connected.
pub fn ur_instance(n: usize, d: usize, p: f64, seed: u64) -> RppInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(n);
    let mut seen = std::collections::HashSet::new();
    while pts.len() < n {
        let q = (rng.gen_range(0..1000i64), rng.gen_range(0..1000i64));
        if seen.insert(q) {
            pts.push(q);
        }
    }
    let mut pairs = std::collections::BTreeSet::new();
    for i in 0..n {
        let mut near: Vec<(u64, usize)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| (euclid(pts[i], pts[j]), j))
            .collect();
        near.sort_unstable();
        for &(_, j) in near.iter().take(d) {
            pairs.insert((i.min(j), i.max(j)));
        }
    }
    loop {
        let g: EdgeMultiset = pairs.iter().map(|&(a, b)| Edge::new(a, b, 1)).collect();
        let comps = connected_components(&g);
        let root = comps.of(0);
        let outside: Vec<usize> = (0..n)
            .filter(|&v| comps.of(v) != root || root.is_none())
            .collect();
        if outside.is_empty() || n < 2 {
            break;
        }
        let inside: Vec<usize> = (0..n)
            .filter(|&v| comps.of(v) == root && root.is_some())
            .collect();
        let inside = if inside.is_empty() { vec![0] } else { inside };
        let mut best = (u64::MAX, 0, 0);
        for &a in &inside {
            for &b in &outside {
                if a != b {
                    best = best.min((euclid(pts[a], pts[b]), a.min(b), a.max(b)));
                }
            }
        }
        pairs.insert((best.1, best.2));
    }
    let mut graph = EdgeMultiset::new();
    let mut required = EdgeMultiset::new();
    for &(a, b) in &pairs {
        let e = Edge::new(a, b, euclid(pts[a], pts[b]));
        graph.insert(e);
        if rng.gen_bool(p) {
            required.insert(e);
        }
    }
    RppInstance::new(
        WeightedMultigraph::new(n, graph).expect("ids in range"),
        required,
    )
    .expect("R is a subset")
}

/// Street-grid stand-in for the larger Berlin instance: 5097 vertices on a
/// 71-wide grid with random block lengths, and three far-apart required
/// components of 136 edges each grown from random walks that prefer
/// untraversed streets. With seeds 1 and 2 this gives b near 50.
pub fn berlin_proxy(seed: u64) -> RppInstance {
    const VERTICES: usize = 5097;
    const WIDTH: usize = 71;
    const PER_COMPONENT: usize = 136;
    const WALK: usize = 12;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graph = EdgeMultiset::new();
    let mut adj = vec![Vec::new(); VERTICES];
    for v in 0..VERTICES {
        let right = v + 1;
        let down = v + WIDTH;
        for w in [right, down] {
            if w < VERTICES && (w == down || right % WIDTH != 0) {
                let e = Edge::new(v, w, rng.gen_range(30..=150));
                graph.insert(e);
                adj[v].push(e);
                adj[w].push(e);
            }
        }
    }
    let rows = VERTICES.div_ceil(WIDTH);
    // one region per component: left, middle and right thirds, with a gap
    let regions = [(0, 20), (25, 45), (50, 70)];
    let mut required = EdgeMultiset::new();
    for &(lo, hi) in &regions {
        let inside = |v: usize| (lo..=hi).contains(&(v % WIDTH)) && v / WIDTH < rows - 1;
        let row = rng.gen_range(5..rows - 5);
        let start = row * WIDTH + (lo + hi) / 2;
        let mut comp = EdgeMultiset::new();
        let mut touched = vec![start];
        while comp.len() < PER_COMPONENT {
            let mut at = *touched.choose(&mut rng).expect("non-empty");
            for _ in 0..WALK {
                let options: Vec<Edge> = adj[at]
                    .iter()
                    .copied()
                    .filter(|e| inside(e.other(at)))
                    .collect();
                // routes follow fresh streets when they can
                let fresh: Vec<Edge> = options
                    .iter()
                    .copied()
                    .filter(|e| comp.count(e) == 0)
                    .collect();
                let pool = if fresh.is_empty() { &options } else { &fresh };
                let e = *pool
                    .choose(&mut rng)
                    .expect("grid vertices have neighbours");
                if comp.count(&e) == 0 {
                    comp.insert(e);
                    touched.push(e.other(at));
                    if comp.len() == PER_COMPONENT {
                        break;
                    }
                }
                at = e.other(at);
            }
        }
        required = required.union(&comp);
    }
    RppInstance::new(
        WeightedMultigraph::new(VERTICES, graph).expect("ids in range"),
        required,
    )
    .expect("R is a subset")
}

/// A connected random multigraph with at most `max_n` vertices, integer
/// weights in `1..=max_w` and between one and `max_req` required edges.
pub fn random_small<R: Rng>(rng: &mut R, max_n: usize, max_req: usize, max_w: u64) -> RppInstance {
    let n = rng.gen_range(2..=max_n);
    let mut graph = EdgeMultiset::new();
    for v in 1..n {
        graph.insert(Edge::new(rng.gen_range(0..v), v, rng.gen_range(1..=max_w)));
    }
    for _ in 0..rng.gen_range(0..=n) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            graph.insert(Edge::new(a, b, rng.gen_range(1..=max_w)));
        }
    }
    let mut units = graph.units();
    units.shuffle(rng);
    let k = rng.gen_range(1..=max_req.min(units.len()));
    let required: EdgeMultiset = units.into_iter().take(k).collect();
    RppInstance::new(
        WeightedMultigraph::new(n, graph).expect("ids in range"),
        required,
    )
    .expect("R is a subset")
}

/// Like [`random_small`], but required edges are drawn one at a time and an
/// edge touching an already required vertex is kept only with probability
/// 1/3, so R tends to split into several components.
pub fn random_scattered<R: Rng>(
    rng: &mut R,
    max_n: usize,
    max_req: usize,
    max_w: u64,
) -> RppInstance {
    let base = random_small(rng, max_n, max_req, max_w);
    let mut units = base.graph().edges().units();
    units.shuffle(rng);
    let k = rng.gen_range(1..=max_req.min(units.len()));
    let mut required = EdgeMultiset::new();
    let mut seen = vec![false; base.graph().vertex_count()];
    for e in units {
        if required.len() == k {
            break;
        }
        if (seen[e.u] || seen[e.v]) && !rng.gen_bool(1.0 / 3.0) {
            continue;
        }
        seen[e.u] = true;
        seen[e.v] = true;
        required.insert(e);
    }
    RppInstance::new(base.graph().clone(), required).expect("R is a subset")
}
