//! Simple undirected graph with stable vertex identities.
//!
//! Every algorithm in this crate runs on top of this representation. Vertex
//! ids are allocated monotonically and never reused after deletion, so
//! reduction traces and marked sets stay meaningful across deletions.
//! Neighbor sets are kept sorted, which makes every iteration order (and
//! therefore every "arbitrary" choice downstream) deterministic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Identity of a vertex, unique for the lifetime of a [`Graph`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} does not exist")]
    MissingVertex(VertexId),
    #[error("edge {{{0}, {1}}} does not exist")]
    MissingEdge(VertexId, VertexId),
    #[error("self-loop on vertex {0} rejected")]
    SelfLoop(VertexId),
}

/// Mutable simple undirected graph.
///
/// Invariants kept at all times: adjacency is symmetric, there are no
/// self-loops or parallel edges, and every neighbor is a live vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adjacency: BTreeMap<VertexId, BTreeSet<VertexId>>,
    next_id: u32,
    edge_count: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with vertices `0..n` and no edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    /// Convenience constructor: vertices `0..n` plus the given edges.
    ///
    /// Panics on invalid edges; intended for fixtures and generators.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = Self::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v)).expect("valid edge");
        }
        g
    }

    /// Allocates a fresh vertex id. Deleted ids are never reissued.
    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.next_id);
        self.next_id += 1;
        self.adjacency.insert(id, BTreeSet::new());
        id
    }

    /// Inserts the edge `{u, v}`. Idempotent on repeats.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.has_vertex(u) {
            return Err(GraphError::MissingVertex(u));
        }
        if !self.has_vertex(v) {
            return Err(GraphError::MissingVertex(v));
        }
        if self.adjacency.get_mut(&u).unwrap().insert(v) {
            self.adjacency.get_mut(&v).unwrap().insert(u);
            self.edge_count += 1;
        }
        Ok(())
    }

    /// Removes `v` together with all incident edges.
    pub fn delete_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        let neighbors = self
            .adjacency
            .remove(&v)
            .ok_or(GraphError::MissingVertex(v))?;
        self.edge_count -= neighbors.len();
        for u in neighbors {
            self.adjacency.get_mut(&u).unwrap().remove(&v);
        }
        Ok(())
    }

    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if !self.has_vertex(u) {
            return Err(GraphError::MissingVertex(u));
        }
        if !self.has_vertex(v) {
            return Err(GraphError::MissingVertex(v));
        }
        if !self.adjacency.get_mut(&u).unwrap().remove(&v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        self.adjacency.get_mut(&v).unwrap().remove(&u);
        self.edge_count -= 1;
        Ok(())
    }

    pub fn delete_vertices<I: IntoIterator<Item = VertexId>>(
        &mut self,
        vs: I,
    ) -> Result<(), GraphError> {
        for v in vs {
            self.delete_vertex(v)?;
        }
        Ok(())
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.adjacency.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency.get(&u).is_some_and(|ns| ns.contains(&v))
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    /// Live vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency.keys().copied()
    }

    /// Neighbors of `v` in ascending id order. Panics if `v` is dead.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.neighbor_set(v).iter().copied()
    }

    pub fn neighbor_set(&self, v: VertexId) -> &BTreeSet<VertexId> {
        self.adjacency
            .get(&v)
            .unwrap_or_else(|| panic!("vertex {v} does not exist"))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbor_set(v).len()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency.iter().flat_map(|(&u, ns)| {
            ns.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Open neighborhood of a vertex set: `N(X) = ∪ N(x) ∖ X`.
    pub fn neighborhood_of_set(&self, xs: &BTreeSet<VertexId>) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        for &x in xs {
            out.extend(self.neighbors(x));
        }
        for x in xs {
            out.remove(x);
        }
        out
    }

    /// Vertex set of the connected component containing `v`.
    pub fn component_of(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(v);
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Partition of the vertex set into connected components, ordered by
    /// minimum vertex id.
    pub fn connected_components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut components = Vec::new();
        let mut seen = BTreeSet::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let comp = self.component_of(v);
            seen.extend(comp.iter().copied());
            components.push(comp);
        }
        components
    }

    /// Subgraph induced by `xs`: same ids, edges with both ends in `xs`.
    pub fn induced_subgraph(&self, xs: &BTreeSet<VertexId>) -> Result<Graph, GraphError> {
        let mut adjacency = BTreeMap::new();
        let mut edge_count = 0usize;
        for &x in xs {
            if !self.has_vertex(x) {
                return Err(GraphError::MissingVertex(x));
            }
            let ns: BTreeSet<VertexId> = self.neighbors(x).filter(|n| xs.contains(n)).collect();
            edge_count += ns.len();
            adjacency.insert(x, ns);
        }
        Ok(Graph {
            adjacency,
            next_id: self.next_id,
            edge_count: edge_count / 2,
        })
    }

    /// Subgraph restricted to the given vertices and a subset of the edges
    /// among them. Ids and the allocation counter are preserved.
    pub fn subgraph_with_edges(
        &self,
        vertices: &BTreeSet<VertexId>,
        edges: &BTreeSet<(VertexId, VertexId)>,
    ) -> Result<Graph, GraphError> {
        let mut g = Graph {
            adjacency: BTreeMap::new(),
            next_id: self.next_id,
            edge_count: 0,
        };
        for &v in vertices {
            if !self.has_vertex(v) {
                return Err(GraphError::MissingVertex(v));
            }
            g.adjacency.insert(v, BTreeSet::new());
        }
        for &(u, v) in edges {
            if !self.has_edge(u, v) {
                return Err(GraphError::MissingEdge(u, v));
            }
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Checks the representation invariants; used by property tests.
    pub fn check_consistency(&self) {
        let mut degree_sum = 0usize;
        for (&u, ns) in &self.adjacency {
            assert!(!ns.contains(&u), "self-loop at {u}");
            assert!(u.0 < self.next_id, "id {u} beyond allocation counter");
            for &v in ns {
                assert!(
                    self.adjacency.get(&v).is_some_and(|m| m.contains(&u)),
                    "asymmetric edge {{{u}, {v}}}"
                );
            }
            degree_sum += ns.len();
        }
        assert_eq!(degree_sum, 2 * self.edge_count, "degree sum mismatch");
    }
}
