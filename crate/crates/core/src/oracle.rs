//! Exact solvers used as ground truth by every safety test.
//!
//! Two oracles of deliberately different design: a branching solver (find a
//! d-path, branch on deleting each of its vertices) and a subset-enumeration
//! solver. The enumeration solver also carries its own path-freeness check,
//! written independently of the production path engine, so a shared bug
//! cannot validate itself.

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::paths::{find_d_path, PathSearchError, MAX_PATH_VERTICES};

/// Subset enumeration blows up beyond this many vertices.
pub const MAX_ENUMERATION_VERTICES: usize = 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, enumeration oracle is limited to {max}")]
    GraphTooLarge { n: usize, max: usize },
    #[error(transparent)]
    Path(#[from] PathSearchError),
}

/// Outcome of an exact decision, with a cover witness on YES.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub yes: bool,
    pub witness: Option<BTreeSet<VertexId>>,
}

fn branch(
    g: &Graph,
    d: usize,
    k: usize,
    deleted: &mut BTreeSet<VertexId>,
) -> Option<BTreeSet<VertexId>> {
    let path = match find_d_path(g, d, deleted).expect("d validated by caller") {
        None => return Some(deleted.clone()),
        Some(p) => p,
    };
    if k == 0 {
        return None;
    }
    for &v in path.vertices() {
        deleted.insert(v);
        if let Some(w) = branch(g, d, k - 1, deleted) {
            deleted.remove(&v);
            return Some(w);
        }
        deleted.remove(&v);
    }
    None
}

/// Exact decision by bounded branching: some vertex of any d-path must be
/// deleted, so try all d of them with budget `k - 1`.
pub fn solve_branching(g: &Graph, d: usize, k: usize) -> Result<Decision, PathSearchError> {
    // validate d up front so the recursion can unwrap
    find_d_path(g, d, &g.vertices().collect())?;
    let mut deleted = BTreeSet::new();
    Ok(match branch(g, d, k, &mut deleted) {
        Some(witness) => Decision {
            yes: true,
            witness: Some(witness),
        },
        None => Decision {
            yes: false,
            witness: None,
        },
    })
}

/// Path-freeness check private to this oracle: depth-first longest-path
/// probe, structured differently from the production search on purpose.
fn path_free(g: &Graph, d: usize, removed: &BTreeSet<VertexId>) -> bool {
    fn probe(
        g: &Graph,
        v: VertexId,
        used: &mut BTreeSet<VertexId>,
        removed: &BTreeSet<VertexId>,
        budget: usize,
    ) -> bool {
        // true iff a simple path of `budget` more vertices extends from v
        if budget == 0 {
            return true;
        }
        for w in g.neighbors(v) {
            if removed.contains(&w) || used.contains(&w) {
                continue;
            }
            used.insert(w);
            let hit = probe(g, w, used, removed, budget - 1);
            used.remove(&w);
            if hit {
                return true;
            }
        }
        false
    }
    for s in g.vertices() {
        if removed.contains(&s) {
            continue;
        }
        let mut used: BTreeSet<VertexId> = [s].into_iter().collect();
        if probe(g, s, &mut used, removed, d - 1) {
            return false;
        }
    }
    true
}

/// Exact minimum d-path vertex cover size by enumerating vertex subsets in
/// increasing cardinality.
pub fn min_pvc(g: &Graph, d: usize) -> Result<usize, OracleError> {
    if !(2..=MAX_PATH_VERTICES).contains(&d) {
        return Err(PathSearchError::UnsupportedPathLength(d).into());
    }
    let n = g.vertex_count();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(OracleError::GraphTooLarge {
            n,
            max: MAX_ENUMERATION_VERTICES,
        });
    }
    let vertices: Vec<VertexId> = g.vertices().collect();
    for size in 0..=n {
        for subset in vertices.iter().copied().combinations(size) {
            let removed: BTreeSet<VertexId> = subset.into_iter().collect();
            if path_free(g, d, &removed) {
                return Ok(size);
            }
        }
    }
    unreachable!("removing all vertices always leaves a path-free graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(d: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (0..d as u32 - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(d, &edges)
    }

    #[test]
    fn single_path_needs_one_deletion() {
        for d in [3usize, 4, 5] {
            let g = path_graph(d);
            let yes = solve_branching(&g, d, 1).unwrap();
            assert!(yes.yes);
            let witness = yes.witness.unwrap();
            assert_eq!(witness.len(), 1);
            assert!(path_free(&g, d, &witness));
            assert!(!solve_branching(&g, d, 0).unwrap().yes);
            assert_eq!(min_pvc(&g, d).unwrap(), 1);
        }
    }

    #[test]
    fn disjoint_paths_need_separate_deletions() {
        let g = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7)]);
        assert!(!solve_branching(&g, 4, 1).unwrap().yes);
        assert!(solve_branching(&g, 4, 2).unwrap().yes);
        assert_eq!(min_pvc(&g, 4).unwrap(), 2);
    }

    #[test]
    fn five_cycle_needs_one_deletion_for_d5() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        assert_eq!(min_pvc(&g, 5).unwrap(), 1);
        assert_eq!(min_pvc(&Graph::with_vertices(4), 4).unwrap(), 0);
    }

    #[test]
    fn budget_errors() {
        let g = Graph::with_vertices(23);
        assert_eq!(
            min_pvc(&g, 4),
            Err(OracleError::GraphTooLarge { n: 23, max: 22 })
        );
        assert!(min_pvc(&Graph::new(), 9).is_err());
    }

    #[test]
    fn oracles_agree_on_random_instances() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        for seed in 0..40u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(1..=9usize);
            let mut g = Graph::with_vertices(n);
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    if rng.random_bool(0.4) {
                        g.add_edge(VertexId(u), VertexId(v)).unwrap();
                    }
                }
            }
            for d in [3usize, 4, 5] {
                let opt = min_pvc(&g, d).unwrap();
                for k in 0..=3usize {
                    let dec = solve_branching(&g, d, k).unwrap();
                    assert_eq!(dec.yes, opt <= k, "seed {seed} d {d} k {k}");
                    if let Some(w) = dec.witness {
                        assert!(w.len() <= k);
                        assert!(path_free(&g, d, &w));
                    }
                }
            }
        }
    }
}
