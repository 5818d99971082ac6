//! Independent brute-force reference algorithms.
//!
//! Everything here is deliberately written without touching the production
//! algorithms it is used to check: the matching references run a bitmask
//! dynamic program instead of blossom contraction, and the expansion
//! reference decides existence through Hall-style subset enumeration
//! instead of flows. They are only feasible on small inputs and exist for
//! the validation suites.

use std::collections::{BTreeSet, HashMap};

use crate::graph::{Graph, VertexId};

const MAX_BITMASK_VERTICES: usize = 24;

fn mask_recurse(mask: u32, adj: &[u32], memo: &mut HashMap<u32, usize>) -> usize {
    if mask == 0 {
        return 0;
    }
    if let Some(&hit) = memo.get(&mask) {
        return hit;
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    // Leave v unmatched, or match it to any remaining neighbor.
    let mut best = mask_recurse(rest, adj, memo);
    let mut nb = adj[v] & rest;
    while nb != 0 {
        let u = nb.trailing_zeros();
        nb &= nb - 1;
        best = best.max(1 + mask_recurse(rest & !(1 << u), adj, memo));
    }
    memo.insert(mask, best);
    best
}

/// Exact maximum matching size by subset dynamic programming.
pub fn max_matching_size(g: &Graph) -> usize {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    assert!(
        n <= MAX_BITMASK_VERTICES,
        "reference matcher limited to {MAX_BITMASK_VERTICES} vertices"
    );
    let index = |v: VertexId| ids.binary_search(&v).expect("live vertex") as u32;
    let adj: Vec<u32> = ids
        .iter()
        .map(|&v| g.neighbors(v).fold(0u32, |m, w| m | (1 << index(w))))
        .collect();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    mask_recurse(full, &adj, &mut HashMap::new())
}

/// Exact size of the largest matching adjacent to `v`: drop `v`, keep only
/// edges with an endpoint in `N(v)`, and take a maximum matching of what
/// is left.
pub fn max_adjacent_matching_size(g: &Graph, v: VertexId) -> usize {
    let nv: BTreeSet<VertexId> = g.neighbors(v).collect();
    let mut h = g.clone();
    h.delete_vertex(v).expect("center exists");
    let drop: Vec<(VertexId, VertexId)> = h
        .edges()
        .filter(|&(x, y)| !nv.contains(&x) && !nv.contains(&y))
        .collect();
    for (x, y) in drop {
        h.delete_edge(x, y).expect("edge listed");
    }
    max_matching_size(&h)
}

/// Hall-style existence check for the expansion lemma: is there a nonempty
/// `A' ⊆ A` and `B' ⊆ B` with a q-expansion of `A'` into `B'` and
/// `N(B') ⊆ A'` in `g`?
///
/// For a candidate `A'`, only `B`-vertices whose whole neighborhood lies in
/// `A'` may enter `B'`; a saturating q-expansion into that pool exists iff
/// every `S ⊆ A'` sees at least `q·|S|` of the pool.
pub fn expansion_exists(
    g: &Graph,
    a_set: &BTreeSet<VertexId>,
    b_set: &BTreeSet<VertexId>,
    q: usize,
) -> bool {
    let a_vec: Vec<VertexId> = a_set.iter().copied().collect();
    assert!(
        a_vec.len() <= 16,
        "reference expansion check limited to |A| <= 16"
    );
    for a_mask in 1u32..(1 << a_vec.len()) {
        let a_prime: BTreeSet<VertexId> = a_vec
            .iter()
            .enumerate()
            .filter(|(i, _)| a_mask & (1 << i) != 0)
            .map(|(_, &v)| v)
            .collect();
        let pool: Vec<VertexId> = b_set
            .iter()
            .copied()
            .filter(|&b| g.neighbors(b).all(|x| a_prime.contains(&x)))
            .collect();
        let members: Vec<VertexId> = a_prime.iter().copied().collect();
        let mut hall_ok = true;
        for s_mask in 1u32..(1 << members.len()) {
            let subset: BTreeSet<VertexId> = members
                .iter()
                .enumerate()
                .filter(|(i, _)| s_mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect();
            let seen = pool
                .iter()
                .filter(|&&b| g.neighbors(b).any(|x| subset.contains(&x)))
                .count();
            if seen < q * subset.len() {
                hall_ok = false;
                break;
            }
        }
        if hall_ok {
            return true;
        }
    }
    false
}
