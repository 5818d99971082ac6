//! General-d kernelization by marking.
//!
//! After the greedy packing, the graph outside the packing is organized
//! into a DFS forest. A request `(f, l)` asks for a path of length `l`
//! whose endpoint set inside the packing is exactly `f`; the set `Y_{f,l}`
//! collects the forest vertices whose subtree can serve the request. A
//! request with many servable leaves is resolved by marking `k + d + 1`
//! vertex-disjoint witness paths; the remaining requests donate their
//! `Y_{f,l}` wholesale to the kept set `𝒴`. Sub-requests anchored at kept
//! vertices are then served out of the components of `G ∖ (M ∪ 𝒴)`:
//! either `2d` disjoint component witnesses exist, or each qualifying
//! component is combed recursively (`mark2`), which re-finds a witness
//! path after every small set of deletions. Unmarked vertices and edges
//! are deleted; the result is an equivalent instance.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::KernelError;
use crate::forest::{build_dfs_forest, DfsForest};
use crate::graph::{Graph, VertexId};
use crate::instance::PvcInstance;
use crate::paths::{greedy_packing, Packing, PackingOutcome};
use crate::stats::{KernelStats, MarkStats, PhaseMarks, RuleFirings};

/// Endpoint set of a (sub-)request: one vertex or two distinct vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Endpoints {
    Single(VertexId),
    Pair(VertexId, VertexId),
}

impl Endpoints {
    /// Normalizing pair constructor.
    pub fn pair(u: VertexId, v: VertexId) -> Self {
        assert!(u != v, "pair endpoints must be distinct");
        Endpoints::Pair(u.min(v), u.max(v))
    }

    pub fn contains(&self, v: VertexId) -> bool {
        match *self {
            Endpoints::Single(x) => x == v,
            Endpoints::Pair(a, b) => a == v || b == v,
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        let pair = match *self {
            Endpoints::Single(x) => (x, None),
            Endpoints::Pair(a, b) => (a, Some(b)),
        };
        std::iter::once(pair.0).chain(pair.1)
    }
}

/// Demand for a path of length `1 ≤ l ≤ d-1` with endpoint set
/// `f ⊆ M` on the packing side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Request {
    pub endpoints: Endpoints,
    pub length: usize,
}

/// A request relative to `M ∪ 𝒴`, anchored at a kept forest vertex whose
/// ancestor chain contains the non-packing endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubRequest {
    pub endpoints: Endpoints,
    pub length: usize,
    pub anchor: VertexId,
}

/// Vertices and edges selected to survive the kernelization. Marking an
/// edge marks both endpoints, so the closure invariant holds by
/// construction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MarkSet {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl MarkSet {
    pub fn mark_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn mark_edge(&mut self, u: VertexId, v: VertexId) {
        assert!(u != v);
        self.vertices.insert(u);
        self.vertices.insert(v);
        self.edges.insert((u.min(v), u.max(v)));
    }

    pub fn mark_path(&mut self, path: &[VertexId]) {
        for &v in path {
            self.mark_vertex(v);
        }
        for w in path.windows(2) {
            self.mark_edge(w[0], w[1]);
        }
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(VertexId, VertexId)> {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Enumerates paths of length `length` in `G[allowed ∪ endpoints]` whose
/// endpoints are exactly the given ones (for a single endpoint, the other
/// end may be any allowed vertex). Deterministic backtracking; stops after
/// `limit` paths. Callers guarantee `endpoints ∩ allowed = ∅`.
pub fn request_paths(
    g: &Graph,
    allowed: &BTreeSet<VertexId>,
    endpoints: &Endpoints,
    length: usize,
    limit: usize,
) -> Vec<Vec<VertexId>> {
    assert!(length >= 1, "request length starts at 1");
    for v in endpoints.vertices() {
        assert!(
            !allowed.contains(&v),
            "request endpoints must be disjoint from the allowed set"
        );
    }
    let (start, target) = match *endpoints {
        Endpoints::Single(x) => (x, None),
        Endpoints::Pair(a, b) => (a, Some(b)),
    };
    let mut out = Vec::new();
    if limit == 0 || !g.has_vertex(start) {
        return out;
    }
    struct Search<'a> {
        g: &'a Graph,
        allowed: &'a BTreeSet<VertexId>,
        target: Option<VertexId>,
        length: usize,
        limit: usize,
    }
    impl Search<'_> {
        fn run(
            &self,
            path: &mut Vec<VertexId>,
            used: &mut BTreeSet<VertexId>,
            out: &mut Vec<Vec<VertexId>>,
        ) {
            if out.len() >= self.limit {
                return;
            }
            let remaining = self.length + 1 - path.len();
            if remaining == 0 {
                out.push(path.clone());
                return;
            }
            let tip = *path.last().unwrap();
            for w in self.g.neighbors(tip) {
                if out.len() >= self.limit {
                    return;
                }
                let ok = if remaining == 1 {
                    match self.target {
                        Some(b) => w == b,
                        None => self.allowed.contains(&w) && !used.contains(&w),
                    }
                } else {
                    self.allowed.contains(&w) && !used.contains(&w)
                };
                if !ok {
                    continue;
                }
                path.push(w);
                used.insert(w);
                self.run(path, used, out);
                used.remove(&w);
                path.pop();
            }
        }
    }
    let search = Search {
        g,
        allowed,
        target,
        length,
        limit,
    };
    let mut path = vec![start];
    let mut used: BTreeSet<VertexId> = [start].into_iter().collect();
    search.run(&mut path, &mut used, &mut out);
    out
}

/// Does `allowed` satisfy the request, i.e. is some witness path available?
pub fn satisfies(
    g: &Graph,
    allowed: &BTreeSet<VertexId>,
    endpoints: &Endpoints,
    length: usize,
) -> bool {
    !request_paths(g, allowed, endpoints, length, 1).is_empty()
}

/// Result of evaluating every request against the forest.
#[derive(Clone, Debug, Default)]
pub struct RequestAnalysis {
    pub request_count: usize,
    pub y_map: BTreeMap<Request, BTreeSet<VertexId>>,
    pub resolved: BTreeSet<Request>,
    /// `𝒴`: union of the `Y_{f,l}` of unresolved requests.
    pub y_union: BTreeSet<VertexId>,
}

/// Computes every `Y_{f,l}`, splits the requests into resolved and
/// unresolved ones, and forms `𝒴`. A request is resolved when the
/// subforest induced by its `Y_{f,l}` has at least `k + d + 1` leaves.
pub fn compute_y(
    g: &Graph,
    m: &BTreeSet<VertexId>,
    forest: &DfsForest,
    d: usize,
    k: usize,
) -> RequestAnalysis {
    let m_vec: Vec<VertexId> = m.iter().copied().collect();
    let mut requests: Vec<Request> = Vec::new();
    for length in 1..d {
        for (i, &a) in m_vec.iter().enumerate() {
            requests.push(Request {
                endpoints: Endpoints::Single(a),
                length,
            });
            for &b in &m_vec[i + 1..] {
                requests.push(Request {
                    endpoints: Endpoints::pair(a, b),
                    length,
                });
            }
        }
    }

    let order = forest.postorder();
    let subtree_of: BTreeMap<VertexId, BTreeSet<VertexId>> =
        forest.vertices().map(|v| (v, forest.subtree(v))).collect();

    let mut analysis = RequestAnalysis {
        request_count: requests.len(),
        ..RequestAnalysis::default()
    };
    for req in requests {
        let mut y: BTreeSet<VertexId> = BTreeSet::new();
        for &v in &order {
            // children first: a servable subtree stays servable above
            let hit = forest.children(v).iter().any(|c| y.contains(c))
                || satisfies(g, &subtree_of[&v], &req.endpoints, req.length);
            if hit {
                y.insert(v);
            }
        }
        debug_assert!(y
            .iter()
            .all(|&v| forest.ancestors(v).iter().all(|a| y.contains(a))));
        let resolved = forest.leaves_within(&y).len() > k + d;
        if resolved {
            analysis.resolved.insert(req);
        } else {
            analysis.y_union.extend(y.iter().copied());
        }
        analysis.y_map.insert(req, y);
    }
    analysis
}

/// Recursive component marking: while a witness path for the sub-request
/// survives the scratch deletions `W` (and `|W| ≤ 2d`), mark one and
/// recurse with each of its non-endpoint vertices added to `W`.
pub fn mark2(
    g: &Graph,
    sub: &SubRequest,
    component: &BTreeSet<VertexId>,
    scratch: &mut BTreeSet<VertexId>,
    out: &mut MarkSet,
    calls: &mut u64,
    d: usize,
) {
    *calls += 1;
    if scratch.len() > 2 * d {
        return;
    }
    let allowed: BTreeSet<VertexId> = component.difference(scratch).copied().collect();
    let found = request_paths(g, &allowed, &sub.endpoints, sub.length, 1);
    let Some(path) = found.first().cloned() else {
        return;
    };
    out.mark_path(&path);
    for &v in &path {
        if sub.endpoints.contains(v) {
            continue;
        }
        scratch.insert(v);
        mark2(g, sub, component, scratch, out, calls, d);
        scratch.remove(&v);
    }
}

/// Everything the marking pass produces, kept for tests and stats.
#[derive(Clone, Debug)]
pub struct MarkRun {
    pub forest: DfsForest,
    pub analysis: RequestAnalysis,
    pub marks: MarkSet,
    pub stats: MarkStats,
}

/// The marking procedure: keeps `G[M ∪ 𝒴]`, witness paths for resolved
/// requests, and component witnesses for every anchored sub-request.
pub fn mark(g: &Graph, packing: &Packing, k: usize) -> MarkRun {
    let d = packing.d();
    let m = packing.vertex_set();
    let forest = build_dfs_forest(g, m);
    assert!(
        forest.max_depth() < d,
        "forest depth exceeds d-1; the packing was not maximal"
    );
    forest.check_back_edges(g, m);

    let analysis = compute_y(g, m, &forest, d, k);
    let dk = d.saturating_mul(k);
    let request_bound = dk
        .saturating_mul(dk.saturating_sub(1))
        .saturating_div(2)
        .saturating_add(dk)
        .saturating_mul(d - 1);
    assert!(
        analysis.request_count <= request_bound,
        "request count exceeds the (C(dk,2)+dk)(d-1) bound"
    );

    let mut marks = MarkSet::default();
    let mut stats = MarkStats {
        packing_vertices: m.len(),
        kept_forest_vertices: analysis.y_union.len(),
        requests_total: analysis.request_count,
        requests_resolved: analysis.resolved.len(),
        ..MarkStats::default()
    };

    // base: everything inside G[M ∪ 𝒴]
    let kept: BTreeSet<VertexId> = m.union(&analysis.y_union).copied().collect();
    for &v in &kept {
        marks.mark_vertex(v);
        for w in g.neighbors(v) {
            if v < w && kept.contains(&w) {
                marks.mark_edge(v, w);
            }
        }
    }
    stats.by_phase.base = PhaseMarks {
        vertices: marks.vertex_count(),
        edges: marks.edge_count(),
    };

    // resolved requests: k+d+1 disjoint witness paths, one per chosen leaf
    for req in &analysis.resolved {
        let y = &analysis.y_map[req];
        let mut leaves = forest.leaves_within(y);
        leaves.truncate(k + d + 1);
        assert_eq!(leaves.len(), k + d + 1, "resolved request lost its leaves");
        let mut claimed: BTreeSet<VertexId> = BTreeSet::new();
        for leaf in leaves {
            let sub = forest.subtree(leaf);
            let found = request_paths(g, &sub, &req.endpoints, req.length, 1);
            let path = found
                .first()
                .expect("leaf membership in Y guarantees a witness");
            marks.mark_path(path);
            for &v in path {
                if !req.endpoints.contains(v) {
                    assert!(
                        claimed.insert(v),
                        "witness paths of a resolved request must be disjoint outside f"
                    );
                }
            }
        }
    }
    let after_resolved = (marks.vertex_count(), marks.edge_count());
    stats.by_phase.resolved = PhaseMarks {
        vertices: after_resolved.0 - stats.by_phase.base.vertices,
        edges: after_resolved.1 - stats.by_phase.base.edges,
    };

    // sub-requests: serve them from the components of G ∖ (M ∪ 𝒴)
    let mut components: Vec<BTreeSet<VertexId>> = Vec::new();
    {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        for v in g.vertices() {
            if kept.contains(&v) || seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([v]);
            comp.insert(v);
            while let Some(u) = queue.pop_front() {
                for w in g.neighbors(u) {
                    if !kept.contains(&w) && comp.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            seen.extend(comp.iter().copied());
            components.push(comp);
        }
    }
    let component_y_contacts: Vec<BTreeSet<VertexId>> = components
        .iter()
        .map(|c| {
            g.neighborhood_of_set(c)
                .into_iter()
                .filter(|v| analysis.y_union.contains(v))
                .collect()
        })
        .collect();

    let mark2_budget = 2 * (d as u64).pow(2 * d as u32);
    for &anchor in &analysis.y_union {
        let anc_set: BTreeSet<VertexId> = forest.ancestors(anchor).into_iter().collect();
        let mut subs: Vec<SubRequest> = Vec::new();
        for length in 1..d {
            for &w in &anc_set {
                subs.push(SubRequest {
                    endpoints: Endpoints::Single(w),
                    length,
                    anchor,
                });
                for &w2 in anc_set.range(..w) {
                    subs.push(SubRequest {
                        endpoints: Endpoints::pair(w2, w),
                        length,
                        anchor,
                    });
                }
                for &mv in m.iter() {
                    subs.push(SubRequest {
                        endpoints: Endpoints::pair(mv, w),
                        length,
                        anchor,
                    });
                }
            }
        }
        subs.sort();
        for sub in subs {
            stats.subrequests += 1;
            let qualifying: Vec<usize> = (0..components.len())
                .filter(|&i| {
                    component_y_contacts[i].is_subset(&anc_set)
                        && satisfies(g, &components[i], &sub.endpoints, sub.length)
                })
                .collect();
            if qualifying.len() >= 2 * d {
                for &ci in qualifying.iter().take(2 * d) {
                    let found = request_paths(g, &components[ci], &sub.endpoints, sub.length, 1);
                    marks.mark_path(found.first().expect("component satisfies the sub-request"));
                }
            } else {
                for &ci in &qualifying {
                    let mut calls = 0u64;
                    let mut scratch = BTreeSet::new();
                    mark2(
                        g,
                        &sub,
                        &components[ci],
                        &mut scratch,
                        &mut marks,
                        &mut calls,
                        d,
                    );
                    assert!(calls <= mark2_budget, "mark2 call tree exceeded 2·d^(2d)");
                    stats.mark2_calls += calls;
                }
            }
        }
    }
    let total = (marks.vertex_count(), marks.edge_count());
    stats.by_phase.subrequest = PhaseMarks {
        vertices: total.0 - after_resolved.0,
        edges: total.1 - after_resolved.1,
    };

    MarkRun {
        forest,
        analysis,
        marks,
        stats,
    }
}

/// Detailed result of the general kernelization.
#[derive(Clone, Debug)]
pub struct GeneralKernelRun {
    pub instance: PvcInstance,
    pub stats: KernelStats,
    pub packing: Option<Packing>,
    pub detail: Option<MarkRun>,
}

/// General kernelization: greedy packing (with its early YES/NO answers),
/// the marking pass, then deletion of everything unmarked.
pub fn kernelize_general_detailed(inst: &PvcInstance) -> Result<GeneralKernelRun, KernelError> {
    if !(3..=8).contains(&inst.d) {
        return Err(KernelError::GeneralKernelNeedsD3To8(inst.d));
    }
    let mut stats = KernelStats {
        n_in: inst.graph.vertex_count(),
        m_in: inst.graph.edge_count(),
        n_out: 0,
        m_out: 0,
        d: inst.d,
        k: inst.k,
        method: "general".into(),
        decided: None,
        rule_firings: RuleFirings::default(),
        bound: None,
        bound_satisfied: None,
        margin: None,
        packing_size: 0,
        marks: None,
        audit: None,
    };
    match greedy_packing(&inst.graph, inst.d, inst.k)? {
        PackingOutcome::PathFree => {
            stats.decided = Some("yes".into());
            Ok(GeneralKernelRun {
                instance: PvcInstance {
                    graph: Graph::new(),
                    d: inst.d,
                    k: inst.k,
                    decided: Some(true),
                },
                stats,
                packing: None,
                detail: None,
            })
        }
        PackingOutcome::Exceeded => {
            stats.decided = Some("no".into());
            Ok(GeneralKernelRun {
                instance: PvcInstance {
                    graph: Graph::new(),
                    d: inst.d,
                    k: inst.k,
                    decided: Some(false),
                },
                stats,
                packing: None,
                detail: None,
            })
        }
        PackingOutcome::Packing(packing) => {
            let run = mark(&inst.graph, &packing, inst.k);
            let kernel = inst
                .graph
                .subgraph_with_edges(run.marks.vertices(), run.marks.edges())?;
            stats.n_out = kernel.vertex_count();
            stats.m_out = kernel.edge_count();
            stats.packing_size = packing.size();
            stats.marks = Some(run.stats.clone());
            Ok(GeneralKernelRun {
                instance: PvcInstance {
                    graph: kernel,
                    d: inst.d,
                    k: inst.k,
                    decided: None,
                },
                stats,
                packing: Some(packing),
                detail: Some(run),
            })
        }
    }
}

/// Spec-shaped entry point returning the reduced instance and statistics.
pub fn kernelize_general(inst: &PvcInstance) -> Result<(PvcInstance, KernelStats), KernelError> {
    let run = kernelize_general_detailed(inst)?;
    Ok((run.instance, run.stats))
}
