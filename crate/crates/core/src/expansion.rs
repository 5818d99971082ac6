//! Constructive expansion lemma.
//!
//! Given a bipartite graph on `(A, B)` with `|B| ≥ q·|A|` and no isolated
//! vertex in `B`, finds `A' ⊆ A` and `B' ⊆ B` such that `A'` has a
//! q-expansion into `B'` and `N(B') ⊆ A'`.
//!
//! The construction computes a maximum flow (source → A with capacity q,
//! unit A–B edges, B → sink with capacity 1) by Kuhn-style augmentation.
//! If every A-vertex is saturated we are done: `A' = A`, `Q` the flow
//! edges, `B'` the saturated B-vertices. Otherwise the A-vertices residual-
//! reachable from an unsaturated one are removed together with *all* their
//! B-neighbors, and the flow is recomputed; flow conservation shows the
//! removal keeps `|B| ≥ q·|A|`, keeps `B` free of isolated vertices, and
//! never empties `A`, so the loop ends within `|A|` rounds. Removing every
//! B-neighbor of a removed A-vertex (not just the exclusively adjacent
//! ones) is what makes the closure `N(B') ⊆ A'` hold in the input graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{Graph, VertexId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("q must be at least 1")]
    ZeroQ,
    #[error("A must be non-empty")]
    EmptyA,
    #[error("(A, B) is not a partition of the graph's vertex set")]
    NotAPartition,
    #[error("edge {{{0}, {1}}} has both endpoints on the same side")]
    EdgeInsideOnePart(VertexId, VertexId),
    #[error("|B| = {have} but q·|A| = {need} is required")]
    TooFewB { need: usize, have: usize },
    #[error("vertex {0} in B is isolated")]
    IsolatedB(VertexId),
}

/// Witness of the expansion lemma's conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionCertificate {
    pub q: usize,
    pub a_prime: BTreeSet<VertexId>,
    pub b_prime: BTreeSet<VertexId>,
    /// Expansion edges `(a, b)` with `a ∈ a_prime`, `b ∈ b_prime`.
    pub edges: BTreeSet<(VertexId, VertexId)>,
}

impl ExpansionCertificate {
    /// Re-checks the certificate invariants against the host graph,
    /// independently of how the certificate was constructed.
    pub fn verify(&self, host: &Graph) -> Result<(), String> {
        if self.a_prime.is_empty() {
            return Err("A' is empty".into());
        }
        let mut incident: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut saturated: BTreeSet<VertexId> = BTreeSet::new();
        for &(a, b) in &self.edges {
            if !self.a_prime.contains(&a) || !self.b_prime.contains(&b) {
                return Err(format!("expansion edge ({a}, {b}) leaves A' x B'"));
            }
            if !host.has_edge(a, b) {
                return Err(format!("expansion edge ({a}, {b}) is not a graph edge"));
            }
            *incident.entry(a).or_default() += 1;
            if !saturated.insert(b) {
                return Err(format!("vertex {b} saturated twice"));
            }
        }
        for &a in &self.a_prime {
            if incident.get(&a).copied().unwrap_or(0) != self.q {
                return Err(format!("vertex {a} is not incident to exactly q edges"));
            }
        }
        if saturated.len() != self.q * self.a_prime.len() {
            return Err("saturated vertex count differs from q·|A'|".into());
        }
        for &b in &self.b_prime {
            for x in host.neighbors(b) {
                if !self.a_prime.contains(&x) {
                    return Err(format!("N(B') escapes A': {b} sees {x}"));
                }
            }
        }
        Ok(())
    }
}

fn try_augment(
    a: VertexId,
    adjacency: &BTreeMap<VertexId, Vec<VertexId>>,
    b_live: &BTreeSet<VertexId>,
    assigned: &mut BTreeMap<VertexId, VertexId>,
    visited: &mut BTreeSet<VertexId>,
) -> bool {
    for &b in &adjacency[&a] {
        if !b_live.contains(&b) || !visited.insert(b) {
            continue;
        }
        let owner = assigned.get(&b).copied();
        let free = match owner {
            None => true,
            Some(o) => try_augment(o, adjacency, b_live, assigned, visited),
        };
        if free {
            assigned.insert(b, a);
            return true;
        }
    }
    false
}

/// Finds a q-expansion certificate; see the module docs for the algorithm.
pub fn q_expansion(
    bipartite: &Graph,
    a_set: &BTreeSet<VertexId>,
    b_set: &BTreeSet<VertexId>,
    q: usize,
) -> Result<ExpansionCertificate, ExpansionError> {
    if q == 0 {
        return Err(ExpansionError::ZeroQ);
    }
    if a_set.is_empty() {
        return Err(ExpansionError::EmptyA);
    }
    let vertices: BTreeSet<VertexId> = bipartite.vertices().collect();
    let union: BTreeSet<VertexId> = a_set.union(b_set).copied().collect();
    if union != vertices || a_set.intersection(b_set).next().is_some() {
        return Err(ExpansionError::NotAPartition);
    }
    for (u, v) in bipartite.edges() {
        if a_set.contains(&u) == a_set.contains(&v) {
            return Err(ExpansionError::EdgeInsideOnePart(u, v));
        }
    }
    if b_set.len() < q * a_set.len() {
        return Err(ExpansionError::TooFewB {
            need: q * a_set.len(),
            have: b_set.len(),
        });
    }
    for &b in b_set {
        if bipartite.degree(b) == 0 {
            return Err(ExpansionError::IsolatedB(b));
        }
    }

    let adjacency: BTreeMap<VertexId, Vec<VertexId>> = a_set
        .iter()
        .map(|&a| (a, bipartite.neighbors(a).collect()))
        .collect();

    let mut a_live: BTreeSet<VertexId> = a_set.clone();
    let mut b_live: BTreeSet<VertexId> = b_set.clone();

    loop {
        // Maximum flow by repeated augmentation; `assigned[b]` is the
        // A-vertex whose unit of flow passes through b.
        let mut assigned: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for &a in &a_live {
            for _ in 0..q {
                let mut visited = BTreeSet::new();
                if !try_augment(a, &adjacency, &b_live, &mut assigned, &mut visited) {
                    break;
                }
            }
        }
        let mut load: BTreeMap<VertexId, usize> = a_live.iter().map(|&a| (a, 0)).collect();
        for &a in assigned.values() {
            *load.get_mut(&a).unwrap() += 1;
        }

        let deficient: Vec<VertexId> = a_live.iter().copied().filter(|a| load[a] < q).collect();

        if deficient.is_empty() {
            let mut edges = BTreeSet::new();
            let mut b_prime = BTreeSet::new();
            for (&b, &a) in &assigned {
                edges.insert((a, b));
                b_prime.insert(b);
            }
            let cert = ExpansionCertificate {
                q,
                a_prime: a_live,
                b_prime,
                edges,
            };
            debug_assert_eq!(cert.verify(bipartite), Ok(()));
            return Ok(cert);
        }

        // Residual reachability from the deficient A-vertices: forward
        // along unused edges, backward along flow edges.
        let mut reached: BTreeSet<VertexId> = deficient.iter().copied().collect();
        let mut queue: VecDeque<VertexId> = deficient.into_iter().collect();
        while let Some(x) = queue.pop_front() {
            if a_live.contains(&x) {
                for &b in &adjacency[&x] {
                    if b_live.contains(&b) && assigned.get(&b) != Some(&x) && reached.insert(b) {
                        queue.push_back(b);
                    }
                }
            } else if let Some(&owner) = assigned.get(&x) {
                if reached.insert(owner) {
                    queue.push_back(owner);
                }
            }
        }

        let a_removed: BTreeSet<VertexId> = a_live.intersection(&reached).copied().collect();
        assert!(
            !a_removed.is_empty() && a_removed.len() < a_live.len(),
            "expansion lemma iteration failed to make progress"
        );
        for a in &a_removed {
            a_live.remove(a);
        }
        b_live.retain(|&b| {
            !reached.contains(&b) && bipartite.neighbors(b).all(|x| !a_removed.contains(&x))
        });

        // The lemma guarantees the preconditions survive the removal.
        assert!(
            b_live.len() >= q * a_live.len(),
            "size precondition lost during expansion iteration"
        );
        for &b in &b_live {
            assert!(
                bipartite.neighbors(b).any(|x| a_live.contains(&x)),
                "isolated B-vertex appeared during expansion iteration"
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;

    fn bipartite(
        a: usize,
        b: usize,
        edges: &[(u32, u32)],
    ) -> (Graph, BTreeSet<VertexId>, BTreeSet<VertexId>) {
        // A-vertices are 0..a, B-vertices a..a+b.
        let g = Graph::from_edges(a + b, edges);
        let a_set = (0..a as u32).map(VertexId).collect();
        let b_set = (a as u32..(a + b) as u32).map(VertexId).collect();
        (g, a_set, b_set)
    }

    #[test]
    fn complete_star_is_the_forced_certificate() {
        let q = 3;
        let (g, a, b) = bipartite(1, 3, &[(0, 1), (0, 2), (0, 3)]);
        let cert = q_expansion(&g, &a, &b, q).unwrap();
        assert_eq!(cert.a_prime, a);
        assert_eq!(cert.b_prime, b);
        assert_eq!(cert.edges.len(), 3);
        cert.verify(&g).unwrap();
    }

    #[test]
    fn single_edge_q1() {
        let (g, a, b) = bipartite(1, 1, &[(0, 1)]);
        let cert = q_expansion(&g, &a, &b, 1).unwrap();
        assert_eq!(cert.a_prime, a);
        assert_eq!(cert.b_prime, b);
        cert.verify(&g).unwrap();
    }

    #[test]
    fn shrinks_a_when_some_vertex_cannot_be_saturated() {
        // a0 sees every b, a1 only sees b0; with q = 2 the vertex a1 cannot
        // be saturated, so the certificate must avoid both a1 and b0.
        let (g, a, b) = bipartite(2, 4, &[(0, 2), (0, 3), (0, 4), (0, 5), (1, 2)]);
        let cert = q_expansion(&g, &a, &b, 2).unwrap();
        assert_eq!(cert.a_prime, [VertexId(0)].into_iter().collect());
        assert!(!cert.b_prime.contains(&VertexId(2)));
        cert.verify(&g).unwrap();
    }

    #[test]
    fn precondition_failures_name_the_clause() {
        let (g, a, b) = bipartite(1, 1, &[(0, 1)]);
        assert_eq!(q_expansion(&g, &a, &b, 0), Err(ExpansionError::ZeroQ));
        assert_eq!(
            q_expansion(&g, &a, &b, 2),
            Err(ExpansionError::TooFewB { need: 2, have: 1 })
        );
        let (g2, a2, b2) = bipartite(1, 2, &[(0, 1)]);
        assert_eq!(
            q_expansion(&g2, &a2, &b2, 1),
            Err(ExpansionError::IsolatedB(VertexId(2)))
        );
        let g3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let a3: BTreeSet<_> = [VertexId(0)].into_iter().collect();
        let b3: BTreeSet<_> = [VertexId(1), VertexId(2)].into_iter().collect();
        assert_eq!(
            q_expansion(&g3, &a3, &b3, 1),
            Err(ExpansionError::EdgeInsideOnePart(VertexId(1), VertexId(2)))
        );
    }

    #[test]
    fn random_instances_yield_valid_deterministic_certificates() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut produced = 0;
        for seed in 0..200u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = rng.random_range(1..=3usize);
            let na = rng.random_range(1..=6usize);
            let nb = q * na + rng.random_range(0..=4usize);
            let mut g = Graph::with_vertices(na + nb);
            for bi in na..(na + nb) {
                // each B-vertex gets at least one neighbor: no isolated B
                let a0 = rng.random_range(0..na) as u32;
                g.add_edge(VertexId(a0), VertexId(bi as u32)).unwrap();
                for ai in 0..na as u32 {
                    if rng.random_bool(0.3) {
                        g.add_edge(VertexId(ai), VertexId(bi as u32)).unwrap();
                    }
                }
            }
            let a_set: BTreeSet<_> = (0..na as u32).map(VertexId).collect();
            let b_set: BTreeSet<_> = (na as u32..(na + nb) as u32).map(VertexId).collect();

            assert!(
                reference::expansion_exists(&g, &a_set, &b_set, q),
                "seed {seed}"
            );
            let cert = q_expansion(&g, &a_set, &b_set, q).unwrap();
            cert.verify(&g)
                .unwrap_or_else(|e| panic!("seed {seed}: {e}"));

            let again = q_expansion(&g, &a_set, &b_set, q).unwrap();
            assert_eq!(cert.a_prime, again.a_prime, "seed {seed}");
            assert_eq!(cert.b_prime, again.b_prime, "seed {seed}");
            assert_eq!(cert.edges, again.edges, "seed {seed}");
            produced += 1;
        }
        assert_eq!(produced, 200);
    }
}
