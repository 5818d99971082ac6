//! Instance generators: seeded random graphs, the structured gadgets used
//! by the size audits, and the parameter-preserving Vertex Cover to d-PVC
//! transformation.

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("{m} edges requested but {n} vertices allow at most {max}")]
    TooManyEdges { n: usize, m: usize, max: usize },
    #[error("transform requires d >= 3, got {0}")]
    TransformNeedsD3(usize),
}

/// Uniform random simple graph with exactly `m` edges, deterministic for a
/// fixed seed.
pub fn random_instance(n: usize, m: usize, seed: u64) -> Result<Graph, InstanceError> {
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(InstanceError::TooManyEdges { n, m, max });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::with_vertices(n);
    if max <= 4096 {
        let mut pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| ((u + 1)..n as u32).map(move |v| (u, v)))
            .collect();
        let (chosen, _) = pairs.partial_shuffle(&mut rng, m);
        for &mut (u, v) in chosen {
            g.add_edge(VertexId(u), VertexId(v)).unwrap();
        }
    } else {
        let mut picked: BTreeSet<(u32, u32)> = BTreeSet::new();
        while picked.len() < m {
            let u = rng.random_range(0..n as u32);
            let v = rng.random_range(0..n as u32);
            if u == v {
                continue;
            }
            picked.insert((u.min(v), u.max(v)));
        }
        for (u, v) in picked {
            g.add_edge(VertexId(u), VertexId(v)).unwrap();
        }
    }
    Ok(g)
}

/// q-star: center 0 with leaves `1..=q`. A 0-star is a single vertex.
pub fn star(q: usize) -> Graph {
    let mut g = Graph::with_vertices(q + 1);
    for leaf in 1..=q as u32 {
        g.add_edge(VertexId(0), VertexId(leaf)).unwrap();
    }
    g
}

pub fn triangle() -> Graph {
    Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)])
}

/// Di-star: centers 0 and 1 joined by an edge, with `p` leaves on the
/// first center and `q` on the second.
pub fn di_star(p: usize, q: usize) -> Graph {
    let mut g = Graph::with_vertices(2 + p + q);
    g.add_edge(VertexId(0), VertexId(1)).unwrap();
    for i in 0..p as u32 {
        g.add_edge(VertexId(0), VertexId(2 + i)).unwrap();
    }
    for i in 0..q as u32 {
        g.add_edge(VertexId(1), VertexId(2 + p as u32 + i)).unwrap();
    }
    g
}

/// Star with a triangle: center 0, `q` plain leaves, and two extra leaves
/// joined by an edge.
pub fn star_with_triangle(q: usize) -> Graph {
    let mut g = star(q + 2);
    g.add_edge(VertexId(q as u32 + 1), VertexId(q as u32 + 2))
        .unwrap();
    g
}

/// Attaches `count` pendant matching edges around `v`: fresh vertices
/// `a_i, b_i` with edges `{v, a_i}` and `{a_i, b_i}`. This is the shape
/// that triggers the high-degree matching rule, since every pair
/// `(b_i, a_i, v, a_j, b_j)` is a 5-path.
pub fn attach_pendant_matching(
    g: &mut Graph,
    v: VertexId,
    count: usize,
) -> Vec<(VertexId, VertexId)> {
    let mut pairs = Vec::with_capacity(count);
    for _ in 0..count {
        let a = g.add_vertex();
        let b = g.add_vertex();
        g.add_edge(v, a).unwrap();
        g.add_edge(a, b).unwrap();
        pairs.push((a, b));
    }
    pairs
}

/// Parameter-preserving transform from Vertex Cover to d-PVC: every
/// original vertex gains a private pendant path on `d - 2` fresh vertices.
/// A vertex cover of size `k` exists iff the result has a d-path vertex
/// cover of size `k`.
pub fn vc_to_dpvc(g: &Graph, d: usize) -> Result<Graph, InstanceError> {
    if d < 3 {
        return Err(InstanceError::TransformNeedsD3(d));
    }
    let mut out = g.clone();
    let originals: Vec<VertexId> = g.vertices().collect();
    for v in originals {
        let mut prev = v;
        for _ in 0..(d - 2) {
            let w = out.add_vertex();
            out.add_edge(prev, w).unwrap();
            prev = w;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{min_pvc, solve_branching};

    #[test]
    fn gadget_shapes() {
        assert_eq!(star(0).vertex_count(), 1);
        assert_eq!(star(0).edge_count(), 0);
        // a 2-star is a 3-path
        let s2 = star(2);
        assert_eq!((s2.vertex_count(), s2.edge_count()), (3, 2));
        assert_eq!(triangle().edge_count(), 3);
        let ds = di_star(2, 3);
        assert_eq!((ds.vertex_count(), ds.edge_count()), (7, 6));
        let swt = star_with_triangle(2);
        assert_eq!((swt.vertex_count(), swt.edge_count()), (5, 5));
    }

    #[test]
    fn random_generation_is_deterministic() {
        let a = random_instance(10, 15, 1).unwrap();
        let b = random_instance(10, 15, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edge_count(), 15);
        assert_eq!(
            random_instance(3, 4, 0),
            Err(InstanceError::TooManyEdges { n: 3, m: 4, max: 3 })
        );
    }

    #[test]
    fn pendant_matching_gadget_forces_the_rule_shape() {
        let mut g = Graph::with_vertices(1);
        let pairs = attach_pendant_matching(&mut g, VertexId(0), 2);
        assert_eq!(pairs.len(), 2);
        assert_eq!(g.vertex_count(), 5);
        // the 5-path through the center exists, so one deletion is needed
        assert_eq!(min_pvc(&g, 5).unwrap(), 1);
    }

    #[test]
    fn transform_on_a_single_edge() {
        let g = Graph::from_edges(2, &[(0, 1)]);
        let t = vc_to_dpvc(&g, 3).unwrap();
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(t.edge_count(), 3);
        // VC(G, 1) = YES and 3-PVC(G', 1) = YES; with k = 0 both are NO.
        assert!(solve_branching(&t, 3, 1).unwrap().yes);
        assert!(!solve_branching(&t, 3, 0).unwrap().yes);
        assert_eq!(min_pvc(&g, 2).unwrap(), 1);
        assert!(vc_to_dpvc(&g, 2).is_err());
    }

    #[test]
    fn transform_preserves_the_answer_on_random_graphs() {
        for seed in 0..30u64 {
            let g = random_instance(6, (seed % 10) as usize, seed).unwrap();
            for d in [3usize, 4, 5] {
                let t = vc_to_dpvc(&g, d).unwrap();
                assert_eq!(
                    t.vertex_count(),
                    g.vertex_count() + g.vertex_count() * (d - 2)
                );
                let vc = min_pvc(&g, 2).unwrap();
                for k in 0..=3usize {
                    let dp = solve_branching(&t, d, k).unwrap().yes;
                    assert_eq!(dp, vc <= k, "seed {seed} d {d} k {k}");
                }
            }
        }
    }
}
