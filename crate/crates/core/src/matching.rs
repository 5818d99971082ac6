//! Maximum matching in general graphs and the matching-adjacent-to-a-vertex
//! construction used by the high-degree reduction rule.
//!
//! The matcher is the classic Edmonds blossom algorithm (augmenting BFS with
//! blossom contraction via base relabeling), O(V³). A general matcher is
//! required here because the auxiliary graph `G_v` keeps edges inside the
//! neighborhood of `v`, so odd cycles do occur.

use std::collections::{BTreeSet, VecDeque};

use crate::graph::{Graph, GraphError, VertexId};

/// A set of pairwise vertex-disjoint edges plus the covered vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    edges: BTreeSet<(VertexId, VertexId)>,
    covered: BTreeSet<VertexId>,
}

impl Matching {
    /// Builds a matching from explicit edges, normalizing the pair order.
    /// Panics if the edges share a vertex.
    pub fn from_edges<I: IntoIterator<Item = (VertexId, VertexId)>>(pairs: I) -> Self {
        let mut edges = BTreeSet::new();
        let mut covered = BTreeSet::new();
        for (u, v) in pairs {
            assert!(u != v, "matching edge cannot be a loop");
            assert!(
                covered.insert(u) && covered.insert(v),
                "edges must be disjoint"
            );
            edges.insert((u.min(v), u.max(v)));
        }
        Matching { edges, covered }
    }

    /// Edges normalized as `(u, v)` with `u < v`.
    pub fn edges(&self) -> &BTreeSet<(VertexId, VertexId)> {
        &self.edges
    }

    pub fn covered(&self) -> &BTreeSet<VertexId> {
        &self.covered
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

/// A maximum matching adjacent to `center`: no edge touches `center` and
/// every edge is oriented so that its first vertex lies in `N(center)`.
#[derive(Clone, Debug)]
pub struct AdjacentMatching {
    pub center: VertexId,
    pub matching: Matching,
    /// Pairs `(a_i, b_i)` with `a_i ∈ N(center)`; when both endpoints are
    /// neighbors of the center the smaller id is the oriented head.
    pub oriented: Vec<(VertexId, VertexId)>,
}

impl AdjacentMatching {
    pub fn size(&self) -> usize {
        self.matching.size()
    }
}

fn lca(
    mut a: usize,
    mut b: usize,
    base: &[usize],
    parent: &[Option<usize>],
    mate: &[Option<usize>],
) -> usize {
    let mut on_path = vec![false; base.len()];
    loop {
        a = base[a];
        on_path[a] = true;
        let Some(m) = mate[a] else { break };
        let Some(pm) = parent[m] else { break };
        a = pm;
    }
    loop {
        b = base[b];
        if on_path[b] {
            return b;
        }
        b = parent[mate[b].expect("interior vertex is matched")].expect("interior has parent");
    }
}

fn mark_path(
    mut v: usize,
    stop: usize,
    mut child: Option<usize>,
    parent: &mut [Option<usize>],
    base: &[usize],
    mate: &[Option<usize>],
    in_blossom: &mut [bool],
) {
    while base[v] != stop {
        in_blossom[base[v]] = true;
        let m = mate[v].expect("matched along the alternating path");
        in_blossom[base[m]] = true;
        parent[v] = child;
        child = Some(m);
        v = parent[m].expect("even vertex has parent");
    }
}

/// Blossom search for one augmenting path from `root`; returns its endpoint.
fn find_augmenting_path(
    adj: &[Vec<usize>],
    mate: &[Option<usize>],
    parent: &mut [Option<usize>],
    root: usize,
) -> Option<usize> {
    let n = adj.len();
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    parent.fill(None);
    used[root] = true;
    let mut queue = VecDeque::new();
    queue.push_back(root);
    while let Some(v) = queue.pop_front() {
        for &to in &adj[v] {
            if base[v] == base[to] || mate[v] == Some(to) {
                continue;
            }
            if to == root || mate[to].is_some_and(|m| parent[m].is_some()) {
                // Odd cycle: contract the blossom onto its base.
                let stop = lca(v, to, &base, parent, mate);
                let mut in_blossom = vec![false; n];
                mark_path(v, stop, Some(to), parent, &base, mate, &mut in_blossom);
                mark_path(to, stop, Some(v), parent, &base, mate, &mut in_blossom);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = stop;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to].is_none() {
                parent[to] = Some(v);
                match mate[to] {
                    None => return Some(to),
                    Some(m) => {
                        used[m] = true;
                        queue.push_back(m);
                    }
                }
            }
        }
    }
    None
}

fn blossom_matching(adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut mate: Vec<Option<usize>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for root in 0..n {
        if mate[root].is_some() {
            continue;
        }
        if let Some(mut v) = find_augmenting_path(adj, &mate, &mut parent, root) {
            while let Some(pv) = parent[v] {
                let next = mate[pv];
                mate[v] = Some(pv);
                mate[pv] = Some(v);
                match next {
                    Some(x) => v = x,
                    None => break,
                }
            }
        }
    }
    mate
}

/// Maximum-cardinality matching of `g`. Deterministic for a fixed input.
pub fn maximum_matching(g: &Graph) -> Matching {
    let ids: Vec<VertexId> = g.vertices().collect();
    let index = |v: VertexId| ids.binary_search(&v).expect("live vertex");
    let adj: Vec<Vec<usize>> = ids
        .iter()
        .map(|&v| g.neighbors(v).map(index).collect())
        .collect();
    let mate = blossom_matching(&adj);
    let mut edges = BTreeSet::new();
    let mut covered = BTreeSet::new();
    for (i, m) in mate.iter().enumerate() {
        if let Some(j) = *m {
            if i < j {
                edges.insert((ids[i], ids[j]));
                covered.insert(ids[i]);
                covered.insert(ids[j]);
            }
        }
    }
    Matching { edges, covered }
}

/// Auxiliary graph for matchings adjacent to `v`: take `A = N(v)` and
/// `B = N(A) ∖ {v}`, induce on `A ∪ B`, and drop edges with both endpoints
/// in `B`. Matchings adjacent to `v` are exactly the matchings of this
/// graph.
pub fn build_gv(g: &Graph, v: VertexId) -> Result<Graph, GraphError> {
    if !g.has_vertex(v) {
        return Err(GraphError::MissingVertex(v));
    }
    let a: BTreeSet<VertexId> = g.neighbors(v).collect();
    let mut ab = a.clone();
    for &x in &a {
        ab.extend(g.neighbors(x));
    }
    ab.remove(&v);
    let mut gv = g.induced_subgraph(&ab)?;
    let inside_b: Vec<(VertexId, VertexId)> = gv
        .edges()
        .filter(|&(x, y)| !a.contains(&x) && !a.contains(&y))
        .collect();
    for (x, y) in inside_b {
        gv.delete_edge(x, y)?;
    }
    Ok(gv)
}

/// Maximum matching adjacent to `v`, with each edge oriented so that the
/// first vertex is a neighbor of `v`.
pub fn max_adjacent_matching(g: &Graph, v: VertexId) -> Result<AdjacentMatching, GraphError> {
    let gv = build_gv(g, v)?;
    let matching = maximum_matching(&gv);
    let nv: BTreeSet<VertexId> = g.neighbors(v).collect();
    let mut oriented = Vec::with_capacity(matching.size());
    for &(x, y) in matching.edges() {
        let (a, b) = if nv.contains(&x) { (x, y) } else { (y, x) };
        debug_assert!(nv.contains(&a), "G_v edge must touch N(v)");
        oriented.push((a, b));
    }
    oriented.sort();
    Ok(AdjacentMatching {
        center: v,
        matching,
        oriented,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    #[test]
    fn perfect_matching_on_a_four_path() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let m = maximum_matching(&g);
        assert_eq!(m.size(), 2);
        assert_eq!(
            m.edges(),
            &[(VertexId(0), VertexId(1)), (VertexId(2), VertexId(3))]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn odd_component_leaves_one_vertex_uncovered() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(maximum_matching(&g).size(), 1);
    }

    #[test]
    fn matches_bruteforce_on_random_graphs() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        for seed in 0..120u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(1..=12usize);
            let mut g = Graph::with_vertices(n);
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    if rng.random_bool(0.35) {
                        g.add_edge(VertexId(u), VertexId(v)).unwrap();
                    }
                }
            }
            let expect = reference::max_matching_size(&g);
            assert_eq!(maximum_matching(&g).size(), expect, "seed {seed}");
        }
    }

    #[test]
    fn handles_odd_cycles_and_nested_blossoms() {
        for n in [3usize, 5, 7, 9, 11] {
            let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
            let g = Graph::from_edges(n, &edges);
            assert_eq!(maximum_matching(&g).size(), n / 2);
        }
        // Blossom within a blossom: a pentagon with a triangle hanging off
        // it, plus a stem — forces two levels of contraction.
        let g = Graph::from_edges(
            9,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (3, 5),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 8),
            ],
        );
        assert_eq!(
            maximum_matching(&g).size(),
            reference::max_matching_size(&g)
        );
    }

    #[test]
    fn gv_of_a_star_center_is_edgeless() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let gv = build_gv(&g, VertexId(0)).unwrap();
        assert_eq!(gv.vertex_count(), 3);
        assert_eq!(gv.edge_count(), 0);
    }

    #[test]
    fn gv_keeps_only_reachable_matching_edges() {
        // v=0 - a=1, a-b (b=2), b-c (c=3): A={a}, B={b}; c is outside A∪B.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let gv = build_gv(&g, VertexId(0)).unwrap();
        assert_eq!(gv.vertex_count(), 2);
        assert!(gv.has_edge(VertexId(1), VertexId(2)));
        assert!(!gv.has_vertex(VertexId(3)));
    }

    #[test]
    fn gv_keeps_edges_inside_the_neighborhood() {
        // Triangle v,a,a' plus edge a-b: A = {a, a'}, B = {b}; the edge
        // {a, a'} stays, which is what makes the general matcher necessary.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3)]);
        let gv = build_gv(&g, VertexId(0)).unwrap();
        let edges: BTreeSet<_> = gv.edges().collect();
        assert_eq!(
            edges,
            [(VertexId(1), VertexId(2)), (VertexId(1), VertexId(3))]
                .into_iter()
                .collect()
        );
        assert!(build_gv(&g, VertexId(9)).is_err());
    }

    #[test]
    fn adjacent_matching_basics() {
        let mut g = Graph::with_vertices(1);
        let am = max_adjacent_matching(&g, VertexId(0)).unwrap();
        assert_eq!(am.size(), 0);

        // v=0 with neighbors 1, 2 and pendant partners 3, 4.
        g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (2, 4)]);
        let am = max_adjacent_matching(&g, VertexId(0)).unwrap();
        assert_eq!(am.size(), 2);
        for &(a, b) in &am.oriented {
            assert!(g.has_edge(VertexId(0), a));
            assert_ne!(b, VertexId(0));
        }
    }

    #[test]
    fn adjacent_matching_matches_bruteforce() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        for seed in 0..80u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
            let n = rng.random_range(2..=10usize);
            let mut g = Graph::with_vertices(n);
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    if rng.random_bool(0.35) {
                        g.add_edge(VertexId(u), VertexId(v)).unwrap();
                    }
                }
            }
            let v = VertexId(rng.random_range(0..n as u32));
            let am = max_adjacent_matching(&g, v).unwrap();
            let expect = reference::max_adjacent_matching_size(&g, v);
            assert_eq!(am.size(), expect, "seed {seed} center {v}");
            // No edge of the matching may touch the center.
            for (x, y) in am.matching.edges() {
                assert_ne!(*x, v);
                assert_ne!(*y, v);
            }
            // Equivalence with the plain maximum matching of G_v.
            let gv = build_gv(&g, v).unwrap();
            assert_eq!(am.size(), maximum_matching(&gv).size());
        }
    }
}
