//! Bounded path search and the greedy maximal d-path packing.
//!
//! The path finder is a depth-bounded backtracking DFS: start vertices are
//! scanned in ascending id order and neighbors are explored in ascending id
//! order, so the first path found is the lexicographically smallest one and
//! the whole packing construction is deterministic. Worst case is
//! `O(n · Δ^(d-1))`, which is fine for the supported range `d ≤ 8`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

/// Largest supported number of path vertices. The search is exponential in
/// `d`, so callers are held to a range where it stays cheap.
pub const MAX_PATH_VERTICES: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathSearchError {
    #[error("path length d={0} outside supported range 2..={MAX_PATH_VERTICES}")]
    UnsupportedPathLength(usize),
}

/// A path on `d` distinct vertices; consecutive vertices were adjacent in
/// the host graph when the path was constructed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPath {
    vertices: Vec<VertexId>,
}

impl DPath {
    /// Validating constructor for externally supplied vertex sequences.
    pub fn new(g: &Graph, vertices: Vec<VertexId>) -> Option<Self> {
        if vertices.len() < 2 {
            return None;
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return None;
        }
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return None;
            }
        }
        Some(DPath { vertices })
    }

    pub(crate) fn from_search(vertices: Vec<VertexId>) -> Self {
        DPath { vertices }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.vertices.iter().copied().collect()
    }
}

/// A set of pairwise vertex-disjoint d-paths together with its vertex set.
#[derive(Clone, Debug)]
pub struct Packing {
    paths: Vec<DPath>,
    d: usize,
    vertex_set: BTreeSet<VertexId>,
}

impl Packing {
    pub fn paths(&self) -> &[DPath] {
        &self.paths
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn size(&self) -> usize {
        self.paths.len()
    }

    /// Union of the path vertex sets, usually written `M`.
    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertex_set
    }
}

/// Result of the greedy packing pass: either the instance is decided
/// outright or a maximal packing of at most `k` paths is returned.
#[derive(Clone, Debug)]
pub enum PackingOutcome {
    /// No d-path exists at all; the instance is a YES instance.
    PathFree,
    /// More than `k` disjoint d-paths exist; the instance is a NO instance.
    Exceeded,
    /// Inclusion-maximal packing with `1..=k` paths.
    Packing(Packing),
}

fn check_d(d: usize) -> Result<(), PathSearchError> {
    if !(2..=MAX_PATH_VERTICES).contains(&d) {
        return Err(PathSearchError::UnsupportedPathLength(d));
    }
    Ok(())
}

fn extend_path(
    g: &Graph,
    d: usize,
    forbidden: &BTreeSet<VertexId>,
    stack: &mut Vec<VertexId>,
    on_stack: &mut BTreeSet<VertexId>,
) -> bool {
    if stack.len() == d {
        return true;
    }
    let tip = *stack.last().unwrap();
    for w in g.neighbors(tip) {
        if forbidden.contains(&w) || on_stack.contains(&w) {
            continue;
        }
        stack.push(w);
        on_stack.insert(w);
        if extend_path(g, d, forbidden, stack, on_stack) {
            return true;
        }
        on_stack.remove(&w);
        stack.pop();
    }
    false
}

/// Finds a d-path in `g` avoiding `forbidden`, or `None` if there is none.
///
/// The result is deterministic: smallest start vertex first, then DFS order
/// with neighbors ascending. A path and its reverse are the same object;
/// the scan order guarantees the returned orientation starts at the
/// smaller endpoint.
pub fn find_d_path(
    g: &Graph,
    d: usize,
    forbidden: &BTreeSet<VertexId>,
) -> Result<Option<DPath>, PathSearchError> {
    check_d(d)?;
    if g.vertex_count().saturating_sub(forbidden.len()) < d {
        return Ok(None);
    }
    for start in g.vertices() {
        if forbidden.contains(&start) {
            continue;
        }
        let mut stack = vec![start];
        let mut on_stack: BTreeSet<VertexId> = [start].into_iter().collect();
        if extend_path(g, d, forbidden, &mut stack, &mut on_stack) {
            return Ok(Some(DPath::from_search(stack)));
        }
    }
    Ok(None)
}

/// Greedy maximal d-path packing with early YES/NO answers.
///
/// Repeatedly finds a d-path disjoint from the packing so far. An empty
/// first search answers YES (the graph is already P_d-free); reaching
/// `k + 1` paths answers NO (every path needs its own cover vertex).
pub fn greedy_packing(g: &Graph, d: usize, k: usize) -> Result<PackingOutcome, PathSearchError> {
    check_d(d)?;
    let mut paths: Vec<DPath> = Vec::new();
    let mut covered: BTreeSet<VertexId> = BTreeSet::new();
    while paths.len() <= k {
        match find_d_path(g, d, &covered)? {
            Some(p) => {
                covered.extend(p.vertices().iter().copied());
                paths.push(p);
            }
            None => break,
        }
    }
    if paths.is_empty() {
        return Ok(PackingOutcome::PathFree);
    }
    if paths.len() > k {
        return Ok(PackingOutcome::Exceeded);
    }
    Ok(PackingOutcome::Packing(Packing {
        paths,
        d,
        vertex_set: covered,
    }))
}
