//! The reduction rules and vertex extraction. All rules keep vertex ids
//! except the deletion of non-required vertices, which renumbers.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{blocks, connected_components, unit_adjacency, Edge, EdgeMultiset};
use crate::kernel::trace::{restrict, ExtractionCase, Gamma, TraceStep};
use crate::matching::greedy_matching;
use crate::metric::MetricRpp;
use crate::solver::balancing_matching;

fn require_metric(inst: &MetricRpp) -> Result<()> {
    if inst.is_metric() {
        return Ok(());
    }
    let (i, k, j) = inst.dist().triangle_violation().unwrap_or((0, 0, 0));
    Err(Error::NotMetric(i, k, j))
}

/// Drops every vertex not incident to a required edge. Returns the reduced
/// instance, the surviving input ids (new id -> old id) and the trace step,
/// if anything was deleted.
pub fn rule_delete_nonrequired(
    inst: &MetricRpp,
) -> Result<(MetricRpp, Vec<usize>, Option<TraceStep>)> {
    require_metric(inst)?;
    let keep = inst.required().vertices();
    let deleted: Vec<usize> = {
        let mut present = vec![false; inst.vertex_count()];
        keep.iter().for_each(|&v| present[v] = true);
        (0..inst.vertex_count()).filter(|&v| !present[v]).collect()
    };
    let step = if deleted.is_empty() {
        None
    } else {
        Some(TraceStep::DeletedVertices(deleted))
    };
    Ok((restrict(inst, &keep), keep, step))
}

/// Keeps a depth-first spanning tree per component and deletes every cycle
/// of the remaining required edges; a one-vertex component keeps one loop.
pub fn rule_strip_cycles(inst: &MetricRpp) -> (MetricRpp, Vec<TraceStep>) {
    let r = inst.required();
    let units = r.units();
    let bound = r.vertex_bound();
    let adj = unit_adjacency(&units, bound);

    let mut in_tree = vec![false; units.len()];
    let mut seen = vec![false; bound];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..bound {
        if seen[root] || adj[root].is_empty() {
            continue;
        }
        seen[root] = true;
        if adj[root].iter().all(|&(w, _)| w == root) {
            in_tree[adj[root][0].1] = true;
            continue;
        }
        stack.push((root, 0));
        while let Some(top) = stack.last_mut() {
            let (v, idx) = *top;
            if idx == adj[v].len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let (w, id) = adj[v][idx];
            if !seen[w] {
                seen[w] = true;
                in_tree[id] = true;
                stack.push((w, 0));
            }
        }
    }

    // Walk the non-tree edges depth-first. Reaching a vertex already on the
    // current path closes a cycle: its edges are deleted and the path is cut
    // back to that vertex. Edges left over form a forest.
    let mut used = in_tree.clone();
    let mut on_path = vec![false; bound];
    let mut finished = vec![false; bound];
    let mut next = vec![0usize; bound];
    let mut path: Vec<(usize, usize)> = Vec::new();
    let mut steps = Vec::new();
    let mut removed = EdgeMultiset::new();
    for s in 0..bound {
        if finished[s] {
            continue;
        }
        path.push((s, usize::MAX));
        on_path[s] = true;
        while let Some(&(x, _)) = path.last() {
            while next[x] < adj[x].len() && used[adj[x][next[x]].1] {
                next[x] += 1;
            }
            if next[x] == adj[x].len() {
                path.pop();
                on_path[x] = false;
                finished[x] = true;
                continue;
            }
            let (y, id) = adj[x][next[x]];
            used[id] = true;
            if on_path[y] {
                let mut cycle = EdgeMultiset::new();
                cycle.insert(units[id]);
                while let Some(&(z, ez)) = path.last() {
                    if z == y {
                        break;
                    }
                    path.pop();
                    on_path[z] = false;
                    cycle.insert(units[ez]);
                }
                removed = removed.union(&cycle);
                steps.push(TraceStep::StrippedCycle(cycle));
            } else {
                path.push((y, id));
                on_path[y] = true;
            }
        }
    }
    let reduced = inst
        .with_required(r.difference(&removed))
        .expect("subset of valid required edges");
    (reduced, steps)
}

/// Why `v` may not be extracted from G⟨R⟩, if it may not.
fn extraction_blocker(r: &EdgeMultiset, v: usize) -> Option<&'static str> {
    let deg = r.degrees();
    if deg.get(v).copied().unwrap_or(0) == 0 {
        return Some("vertex is not incident to a required edge");
    }
    if deg[v] % 2 == 1 {
        return Some("vertex is imbalanced");
    }
    let comps = connected_components(r);
    let c = comps.of(v).expect("vertex has edges");
    if comps.members()[c].len() < 3 {
        return Some("component has fewer than three vertices");
    }
    if blocks(r).blocks_of(v).len() > 2 {
        return Some("cut vertex in more than two blocks");
    }
    None
}

/// Extracts `v` from G⟨R⟩. Returns the new required multiset and the step.
pub fn extract_vertex(inst: &MetricRpp, v: usize) -> Result<(EdgeMultiset, TraceStep)> {
    let r = inst.required();
    if let Some(clause) = extraction_blocker(r, v) {
        return Err(Error::Extraction { vertex: v, clause });
    }
    let tree = blocks(r);
    let mut removed = EdgeMultiset::new();
    let mut added = EdgeMultiset::new();
    let mut current = r.clone();
    let mut case = ExtractionCase::NonCut;
    if tree.blocks_of(v).len() == 2 {
        let mut ends = Vec::with_capacity(2);
        for &bi in tree.blocks_of(v) {
            let e = tree.block_edges[bi]
                .iter()
                .map(|(e, _)| *e)
                .filter(|e| e.touches(v) && !e.is_loop())
                .min_by_key(|e| (e.other(v), e.weight))
                .expect("a block at a cut vertex has a non-loop edge");
            ends.push(e);
        }
        let (a, b) = (ends[0].other(v), ends[1].other(v));
        let shortcut = inst.edge(a, b);
        for e in &ends {
            current.remove(e);
            removed.insert(*e);
        }
        current.insert(shortcut);
        added.insert(shortcut);
        case = ExtractionCase::TwoBlocks;
        if current.degrees().get(v).copied().unwrap_or(0) == 0 {
            return Ok((
                current,
                TraceStep::Extraction {
                    vertex: v,
                    case,
                    removed,
                    added,
                },
            ));
        }
        if blocks(&current).blocks_of(v).len() > 1 {
            return Err(Error::Extraction {
                vertex: v,
                clause: "still a cut vertex after the shortcut",
            });
        }
        case = ExtractionCase::TwoBlocksThenNonCut;
    }

    let rv = current.incident(v);
    let mut odd: Vec<usize> = Vec::new();
    for (e, m) in rv.iter() {
        if !e.is_loop() && m % 2 == 1 {
            odd.push(e.other(v));
        }
    }
    odd.sort_unstable();
    // a neighbour reached by edges of several weights is odd iff the total is
    let mut parity: Vec<usize> = Vec::new();
    for x in odd {
        if parity.last() == Some(&x) {
            parity.pop();
        } else {
            parity.push(x);
        }
    }
    let m = greedy_matching(&parity, |a, b| inst.dist().get(a, b))?;
    current = current.difference(&rv);
    removed = removed.union(&rv);
    for &(a, b) in &m.pairs {
        let e = inst.edge(a, b);
        current.insert(e);
        added.insert(e);
    }
    Ok((
        current,
        TraceStep::Extraction {
            vertex: v,
            case,
            removed,
            added,
        },
    ))
}

/// Greedy representatives per component: ascending ids, a vertex joins iff
/// its distance to every representative chosen so far exceeds γ.
pub fn representatives(inst: &MetricRpp, gamma: &Gamma) -> Vec<usize> {
    let mut out = Vec::new();
    for comp in connected_components(inst.required()).members() {
        let mut chosen: Vec<usize> = Vec::new();
        for &v in &comp {
            if chosen
                .iter()
                .all(|&b| gamma.exceeded_by(inst.dist().get(v, b)))
            {
                chosen.push(v);
            }
        }
        out.extend(chosen);
    }
    out.sort_unstable();
    out
}

/// Extracts eligible balanced vertices outside the representative set until
/// none is left, scanning ids in ascending order from the start after every
/// extraction.
pub fn rule_extract_balanced(
    inst: &MetricRpp,
    gamma: &Gamma,
) -> Result<(MetricRpp, Vec<TraceStep>)> {
    require_metric(inst)?;
    let mut protected = vec![false; inst.vertex_count()];
    for v in representatives(inst, gamma) {
        protected[v] = true;
    }
    let mut current = inst.clone();
    let mut steps = Vec::new();
    loop {
        let r = current.required();
        let deg = r.degrees();
        let comps = connected_components(r);
        let sizes: Vec<usize> = comps.members().iter().map(|m| m.len()).collect();
        let tree = blocks(r);
        let pick = (0..deg.len()).find(|&v| {
            !protected[v]
                && deg[v] > 0
                && deg[v].is_multiple_of(2)
                && sizes[comps.of(v).expect("has edges")] >= 3
                && tree.blocks_of(v).len() <= 2
        });
        let Some(v) = pick else { break };
        let (next, step) = extract_vertex(&current, v)?;
        current = current.with_required(next)?;
        steps.push(step);
    }
    Ok((current, steps))
}

/// Adds the cheapest edges of a minimum balancing matching M to R while
/// their summed weight stays within `delta`.
pub fn rule_add_matching(inst: &MetricRpp, delta: u64) -> Result<(MetricRpp, Option<TraceStep>)> {
    require_metric(inst)?;
    let mut m: Vec<Edge> = balancing_matching(inst)?.units();
    m.sort_unstable_by_key(|e| (e.weight, e.u, e.v));
    let mut chosen = EdgeMultiset::new();
    for e in m {
        if chosen.total_weight() + e.weight > delta {
            break;
        }
        chosen.insert(e);
    }
    if chosen.is_empty() {
        return Ok((inst.clone(), None));
    }
    let next = inst.with_required(inst.required().union(&chosen))?;
    Ok((next, Some(TraceStep::AddedMatching(chosen))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::imbalanced_vertices;
    use crate::metric::DistanceMatrix;
    use crate::ratio::Rational;

    /// Vertices on a line at the given positions; R given by index pairs,
    /// weighted by distance.
    fn line(pos: &[u64], req: &[(usize, usize)]) -> MetricRpp {
        let d = DistanceMatrix::from_fn(pos.len(), |a, b| pos[a].abs_diff(pos[b])).unwrap();
        let r = req.iter().map(|&(a, b)| d.edge(a, b)).collect();
        MetricRpp::new(d, r).unwrap()
    }

    fn unit(n: usize, req: &[(usize, usize)]) -> MetricRpp {
        let d = DistanceMatrix::from_fn(n, |_, _| 1).unwrap();
        let r = req.iter().map(|&(a, b)| d.edge(a, b)).collect();
        MetricRpp::new(d, r).unwrap()
    }

    #[test]
    fn delete_keeps_required_vertices() {
        let inst = unit(5, &[(0, 1)]);
        let (k, map, step) = rule_delete_nonrequired(&inst).unwrap();
        assert_eq!(k.vertex_count(), 2);
        assert_eq!(map, vec![0, 1]);
        assert_eq!(step, Some(TraceStep::DeletedVertices(vec![2, 3, 4])));
        let (k, _, _) = rule_delete_nonrequired(&unit(3, &[])).unwrap();
        assert_eq!(k.vertex_count(), 0);
    }

    #[test]
    fn delete_rejects_non_metric() {
        let d = DistanceMatrix::from_fn(3, |a, b| if (a, b) == (0, 2) { 5 } else { 1 }).unwrap();
        let inst = MetricRpp::new(d, EdgeMultiset::new()).unwrap();
        assert!(matches!(
            rule_delete_nonrequired(&inst),
            Err(Error::NotMetric(..))
        ));
    }

    #[test]
    fn doubled_triangle_becomes_triangle() {
        let inst = unit(3, &[(0, 1), (0, 1), (1, 2), (1, 2), (0, 2), (0, 2)]);
        let (k, steps) = rule_strip_cycles(&inst);
        assert_eq!(k.required(), unit(3, &[(0, 1), (1, 2), (0, 2)]).required());
        assert_eq!(steps.len(), 1);
    }

    #[test]
    fn triangle_and_loop_are_kept() {
        let tri = unit(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(rule_strip_cycles(&tri).0, tri);
        let lp = unit(1, &[(0, 0)]);
        assert_eq!(rule_strip_cycles(&lp).0, lp);
        let loops = unit(1, &[(0, 0), (0, 0), (0, 0)]);
        assert_eq!(rule_strip_cycles(&loops).0, lp);
    }

    #[test]
    fn path_vertex_is_shortcut() {
        let inst = line(&[0, 1, 3], &[(0, 1), (1, 2)]);
        let (r, step) = extract_vertex(&inst, 1).unwrap();
        assert_eq!(r, [Edge::new(0, 2, 3)].into_iter().collect());
        assert!(matches!(
            step,
            TraceStep::Extraction {
                case: ExtractionCase::TwoBlocks,
                ..
            }
        ));
    }

    #[test]
    fn cycle_vertex_is_matched_around() {
        let inst = unit(3, &[(0, 1), (1, 2), (0, 2)]);
        let (r, step) = extract_vertex(&inst, 1).unwrap();
        assert_eq!(
            r,
            [Edge::new(0, 2, 1), Edge::new(0, 2, 1)]
                .into_iter()
                .collect()
        );
        assert!(matches!(
            step,
            TraceStep::Extraction {
                case: ExtractionCase::NonCut,
                ..
            }
        ));
    }

    #[test]
    fn double_edge_to_one_neighbour_needs_no_matching() {
        // v = 3 hangs off a triangle by a doubled edge to 0
        let inst = unit(4, &[(0, 1), (1, 2), (0, 2), (0, 3), (0, 3)]);
        let (r, step) = extract_vertex(&inst, 3).unwrap();
        assert_eq!(r, unit(4, &[(0, 1), (1, 2), (0, 2)]).required().clone());
        let TraceStep::Extraction { added, .. } = step else {
            panic!()
        };
        assert!(added.is_empty());
    }

    #[test]
    fn extraction_preconditions() {
        let inst = unit(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(
            extract_vertex(&inst, 0),
            Err(Error::Extraction {
                vertex: 0,
                clause: "vertex is imbalanced"
            })
        );
        let small = unit(2, &[(0, 1), (0, 1)]);
        assert!(matches!(
            extract_vertex(&small, 0),
            Err(Error::Extraction { .. })
        ));
        // centre of a three-edge star with doubled spokes is in three blocks
        let star = unit(4, &[(0, 1), (0, 1), (0, 2), (0, 2), (0, 3), (0, 3)]);
        assert_eq!(
            extract_vertex(&star, 0),
            Err(Error::Extraction {
                vertex: 0,
                clause: "cut vertex in more than two blocks"
            })
        );
    }

    #[test]
    fn infinite_gamma_shrinks_four_cycle() {
        let inst = unit(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let (k, steps) = rule_extract_balanced(&inst, &Gamma::Infinite).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(
            k.required(),
            &[Edge::new(0, 3, 1), Edge::new(0, 3, 1)]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn zero_gamma_extracts_nothing_between_distinct_points() {
        let inst = line(&[0, 1, 2, 3], &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let (k, steps) =
            rule_extract_balanced(&inst, &Gamma::Finite(Rational::from_integer(0))).unwrap();
        assert!(steps.is_empty());
        assert_eq!(k, inst);
    }

    #[test]
    fn add_matching_cheapest_first() {
        // two required edges far apart: odd vertices 0,1,2,3 at 0,1,10,12
        let inst = line(&[0, 1, 10, 12], &[(0, 2), (1, 3)]);
        let m = balancing_matching(&inst).unwrap();
        assert_eq!(m.total_weight(), 3);
        let (same, step) = rule_add_matching(&inst, 0).unwrap();
        assert_eq!((same, step), (inst.clone(), None));
        let (one, _) = rule_add_matching(&inst, 1).unwrap();
        assert_eq!(imbalanced_vertices(one.required()).len(), 2);
        let (all, _) = rule_add_matching(&inst, 3).unwrap();
        assert!(imbalanced_vertices(all.required()).is_empty());
    }
}
