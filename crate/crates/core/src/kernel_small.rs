//! Quadratic-edge kernelization for d ∈ {4, 5}.
//!
//! Four reduction rules are applied exhaustively, cheapest first, restarting
//! after every change:
//!
//! 1. remove a connected component that contains no d-path;
//! 2. if two degree-one vertices share their single neighbor, delete one;
//! 3. if some vertex has a matching of size ≥ k+2 adjacent to it, delete
//!    the vertex and decrement k (any solution avoiding it would leave two
//!    uncovered matching edges and with them a path through the vertex);
//! 4. if some vertex v has degree ≥ (d+2)(k+1)+1, a (d-1)-expansion from
//!    the matched neighborhood into the unmatched one exists, and one edge
//!    from v into the expansion is redundant.
//!
//! Once no rule applies, the greedy packing either settles the instance or
//! certifies the kernel: the reduced graph then has maximum degree at most
//! (d+2)(k+1) and at most 96k²+96k edges for d=4 / 245k²+245k for d=5, and
//! every remainder component is a star or triangle (d=4) resp. a ≤4-vertex
//! graph, star with a triangle, or di-star (d=5).

use std::collections::{BTreeSet, VecDeque};

use crate::error::KernelError;
use crate::expansion::q_expansion;
use crate::graph::{Graph, VertexId};
use crate::instance::PvcInstance;
use crate::matching::{max_adjacent_matching, AdjacentMatching};
use crate::paths::{find_d_path, greedy_packing, Packing, PackingOutcome};
use crate::stats::{AuditStats, KernelStats, RuleFirings};

/// One reduction step; replaying a trace reproduces the reduced instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionEvent {
    ComponentRemoved {
        vertices: BTreeSet<VertexId>,
    },
    DegreeOneTwinDeleted {
        twin: VertexId,
        center: VertexId,
    },
    HighDegreeVertexDeleted {
        vertex: VertexId,
        matching_size: usize,
    },
    ExpansionEdgeDeleted {
        x: VertexId,
        v: VertexId,
    },
    KDecremented,
}

#[derive(Clone, Debug, Default)]
pub struct ReductionTrace {
    pub events: Vec<ReductionEvent>,
}

impl ReductionTrace {
    /// Applies the recorded events to a copy of `original`.
    pub fn replay(&self, original: &PvcInstance) -> PvcInstance {
        let mut inst = original.clone();
        for ev in &self.events {
            match ev {
                ReductionEvent::ComponentRemoved { vertices } => {
                    inst.graph
                        .delete_vertices(vertices.iter().copied())
                        .expect("trace replays on the original instance");
                }
                ReductionEvent::DegreeOneTwinDeleted { twin, .. } => {
                    inst.graph.delete_vertex(*twin).expect("twin exists");
                }
                ReductionEvent::HighDegreeVertexDeleted { vertex, .. } => {
                    inst.graph.delete_vertex(*vertex).expect("vertex exists");
                }
                ReductionEvent::ExpansionEdgeDeleted { x, v } => {
                    inst.graph.delete_edge(*x, *v).expect("edge exists");
                }
                ReductionEvent::KDecremented => {
                    if inst.k == 0 {
                        inst.decided = Some(false);
                    } else {
                        inst.k -= 1;
                    }
                }
            }
        }
        if inst.decided.is_none() && inst.graph.is_empty() {
            inst.decided = Some(true);
        }
        inst
    }
}

/// Partition of `X = N(v) ∖ covered(ℳ)` used by the expansion rule:
/// `x0` sees only v, `x2` dominates both endpoints of some matching edge,
/// `x1` is the rest; `m1` are the matched vertices adjacent to `x1`.
#[derive(Clone, Debug)]
pub struct XPartition {
    pub x0: BTreeSet<VertexId>,
    pub x1: BTreeSet<VertexId>,
    pub x2: BTreeSet<VertexId>,
    pub m1: BTreeSet<VertexId>,
}

/// Edge bound certified for the reduced instance. Saturating, so absurd
/// parameters degrade to a vacuous bound instead of overflowing.
pub fn edge_bound(d: usize, k: usize) -> Option<usize> {
    let quadratic = |c: usize| c.saturating_mul(k).saturating_mul(k.saturating_add(1));
    match d {
        4 => Some(quadratic(96)),
        5 => Some(quadratic(245)),
        _ => None,
    }
}

/// Degree bound enforced by rules 3 and 4.
pub fn degree_bound(d: usize, k: usize) -> usize {
    (d + 2).saturating_mul(k.saturating_add(1))
}

/// Rule 1: removes one component without a d-path, if any.
pub fn rule_component(inst: &mut PvcInstance) -> Result<Option<ReductionEvent>, KernelError> {
    let mut events = strip_path_free_components(inst, true)?;
    Ok(events.pop())
}

/// Removing one path-free component never changes another component, so
/// the exhaustive driver sweeps them all in one pass. The events are the
/// same ones repeated single firings would record.
fn strip_path_free_components(
    inst: &mut PvcInstance,
    only_first: bool,
) -> Result<Vec<ReductionEvent>, KernelError> {
    let mut events = Vec::new();
    for comp in inst.graph.connected_components() {
        let free = if comp.len() < inst.d {
            true
        } else {
            let sub = inst.graph.induced_subgraph(&comp)?;
            find_d_path(&sub, inst.d, &BTreeSet::new())?.is_none()
        };
        if free {
            inst.graph.delete_vertices(comp.iter().copied())?;
            events.push(ReductionEvent::ComponentRemoved { vertices: comp });
            if only_first {
                break;
            }
        }
    }
    Ok(events)
}

/// Rule 2: if two degree-one vertices share their only neighbor, deletes
/// the higher-id one of the first such pair.
pub fn rule_degree_one(inst: &mut PvcInstance) -> Option<ReductionEvent> {
    let centers: Vec<VertexId> = inst.graph.vertices().collect();
    for v in centers {
        let pendants: Vec<VertexId> = inst
            .graph
            .neighbors(v)
            .filter(|&w| inst.graph.degree(w) == 1)
            .take(2)
            .collect();
        if pendants.len() == 2 {
            let twin = pendants[1];
            inst.graph.delete_vertex(twin).expect("pendant exists");
            return Some(ReductionEvent::DegreeOneTwinDeleted { twin, center: v });
        }
    }
    None
}

/// Rule 3: deletes a vertex with an adjacent matching of size ≥ k+2 and
/// decrements k. With k = 0 the instance is flagged NO instead of going
/// negative.
pub fn rule_matching(inst: &mut PvcInstance) -> Result<Vec<ReductionEvent>, KernelError> {
    let threshold = inst.k.saturating_add(2);
    let candidates: Vec<VertexId> = inst.graph.vertices().collect();
    for v in candidates {
        // a matching adjacent to v has one distinct N(v)-vertex per edge
        if inst.graph.degree(v) < threshold {
            continue;
        }
        let am = max_adjacent_matching(&inst.graph, v)?;
        if am.size() >= threshold {
            inst.graph.delete_vertex(v)?;
            if inst.k == 0 {
                inst.decided = Some(false);
            } else {
                inst.k -= 1;
            }
            return Ok(vec![
                ReductionEvent::HighDegreeVertexDeleted {
                    vertex: v,
                    matching_size: am.size(),
                },
                ReductionEvent::KDecremented,
            ]);
        }
    }
    Ok(Vec::new())
}

/// Splits `X = N(v) ∖ covered` into the partition used by the expansion
/// rule, asserting the structural observations that hold for maximum
/// adjacent matchings along the way.
pub fn classify_x(
    g: &Graph,
    v: VertexId,
    am: &AdjacentMatching,
) -> Result<XPartition, KernelError> {
    let covered = am.matching.covered();
    let x: BTreeSet<VertexId> = g.neighbors(v).filter(|w| !covered.contains(w)).collect();

    // every X-neighbor besides v must be matched, else ℳ extends
    for &xv in &x {
        for u in g.neighbors(xv) {
            if u != v && !covered.contains(&u) {
                return Err(KernelError::ObservationViolated(
                    "X-vertex with a neighbor outside the matching",
                ));
            }
        }
    }
    // no two X-vertices may reach opposite endpoints of one matching edge
    for &(a, b) in am.matching.edges() {
        let sa: BTreeSet<VertexId> = x.iter().copied().filter(|&xv| g.has_edge(xv, a)).collect();
        let sb: BTreeSet<VertexId> = x.iter().copied().filter(|&xv| g.has_edge(xv, b)).collect();
        if !sa.is_empty() && !sb.is_empty() && sa.union(&sb).count() > 1 {
            return Err(KernelError::ObservationViolated(
                "distinct X-vertices on opposite endpoints of a matching edge",
            ));
        }
    }

    let mut x0 = BTreeSet::new();
    let mut x1 = BTreeSet::new();
    let mut x2 = BTreeSet::new();
    for &xv in &x {
        let dominated_edge = am
            .matching
            .edges()
            .iter()
            .find(|&&(a, b)| g.has_edge(xv, a) && g.has_edge(xv, b));
        if let Some(&(a, b)) = dominated_edge {
            // the dominated edge is private to this X-vertex
            for &other in &x {
                if other != xv && (g.has_edge(other, a) || g.has_edge(other, b)) {
                    return Err(KernelError::ObservationViolated(
                        "dominated matching edge seen by a second X-vertex",
                    ));
                }
            }
            x2.insert(xv);
        } else if g.neighbor_set(xv).len() == 1 {
            x0.insert(xv);
        } else {
            x1.insert(xv);
        }
    }

    let mut m1 = BTreeSet::new();
    for &m in covered {
        if x1.iter().any(|&xv| g.has_edge(xv, m)) {
            m1.insert(m);
        }
    }
    for &(a, b) in am.matching.edges() {
        if m1.contains(&a) && m1.contains(&b) {
            return Err(KernelError::ObservationViolated(
                "both endpoints of a matching edge adjacent to X1",
            ));
        }
    }
    Ok(XPartition { x0, x1, x2, m1 })
}

/// Rule 4: for a vertex of degree ≥ (d+2)(k+1)+1, finds the
/// (d-1)-expansion inside (M1, X1) and deletes the edge from v to the
/// minimum-id expansion vertex. Requires rules 2 and 3 to be saturated.
pub fn rule_expansion(inst: &mut PvcInstance) -> Result<Option<ReductionEvent>, KernelError> {
    let d = inst.d;
    let k = inst.k;
    let threshold = degree_bound(d, k).saturating_add(1);
    let candidates: Vec<VertexId> = inst.graph.vertices().collect();
    for v in candidates {
        if inst.graph.degree(v) < threshold {
            continue;
        }
        let am = max_adjacent_matching(&inst.graph, v)?;
        if am.size() > k + 1 {
            return Err(KernelError::ObservationViolated(
                "rule 3 not saturated before rule 4",
            ));
        }
        let part = classify_x(&inst.graph, v, &am)?;
        if part.x0.len() > 1 {
            return Err(KernelError::ObservationViolated(
                "rule 2 not saturated before rule 4",
            ));
        }
        let q = d - 1;
        if part.x1.len() < q * (k + 1) {
            return Err(KernelError::ObservationViolated(
                "high-degree vertex with too small X1",
            ));
        }

        // bipartite graph on (M1, X1) with only the edges in between
        let union: BTreeSet<VertexId> = part.m1.union(&part.x1).copied().collect();
        let mut bip = inst.graph.induced_subgraph(&union)?;
        let inner: Vec<(VertexId, VertexId)> = bip
            .edges()
            .filter(|&(a, b)| part.m1.contains(&a) == part.m1.contains(&b))
            .collect();
        for (a, b) in inner {
            debug_assert!(
                part.m1.contains(&a) && part.m1.contains(&b),
                "edges inside X1 cannot exist"
            );
            bip.delete_edge(a, b)?;
        }

        let cert = q_expansion(&bip, &part.m1, &part.x1, q)
            .expect("expansion preconditions are guaranteed after rules 2-3");
        let x = *cert.b_prime.iter().next().expect("expansion is non-empty");
        inst.graph.delete_edge(x, v)?;
        return Ok(Some(ReductionEvent::ExpansionEdgeDeleted { x, v }));
    }
    Ok(None)
}

/// Shape taxonomy for components of the remainder graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentShape {
    Star,
    Triangle,
    /// At most four vertices (d = 5 only).
    Small,
    StarWithTriangle,
    DiStar,
}

fn tree_diameter(g: &Graph, comp: &BTreeSet<VertexId>) -> usize {
    fn farthest(g: &Graph, from: VertexId) -> (VertexId, usize) {
        use std::collections::btree_map::Entry;
        let mut dist = std::collections::BTreeMap::new();
        dist.insert(from, 0usize);
        let mut queue = VecDeque::from([from]);
        let mut best = (from, 0);
        while let Some(u) = queue.pop_front() {
            let du = dist[&u];
            if du > best.1 || (du == best.1 && u < best.0) {
                best = (u, du);
            }
            for w in g.neighbors(u) {
                if let Entry::Vacant(slot) = dist.entry(w) {
                    slot.insert(du + 1);
                    queue.push_back(w);
                }
            }
        }
        best
    }
    let start = *comp.iter().next().expect("component is non-empty");
    let (far, _) = farthest(g, start);
    farthest(g, far).1
}

/// Classifies one connected component of the remainder graph `G[A]`.
pub fn classify_component(
    ga: &Graph,
    comp: &BTreeSet<VertexId>,
    d: usize,
) -> Result<ComponentShape, KernelError> {
    let sub = ga.induced_subgraph(comp)?;
    let n = sub.vertex_count();
    let m = sub.edge_count();
    let max_deg = sub.vertices().map(|v| sub.degree(v)).max().unwrap_or(0);
    let fail = || {
        KernelError::UnclassifiableComponent(
            format!("{:?}", comp.iter().map(|v| v.0).collect::<Vec<_>>()),
            d,
        )
    };
    match d {
        4 => {
            if n == 3 && m == 3 {
                Ok(ComponentShape::Triangle)
            } else if m + 1 == n && max_deg + 1 == n {
                Ok(ComponentShape::Star)
            } else {
                Err(fail())
            }
        }
        5 => {
            if n <= 4 {
                Ok(ComponentShape::Small)
            } else if m + 1 == n && tree_diameter(&sub, comp) <= 3 {
                Ok(ComponentShape::DiStar)
            } else if m == n && max_deg + 1 == n {
                // center sees everything; the single extra edge must join
                // two leaves, forming the triangle
                let center = sub
                    .vertices()
                    .find(|&v| sub.degree(v) + 1 == n)
                    .expect("max degree vertex");
                let deg2: Vec<VertexId> = sub
                    .vertices()
                    .filter(|&v| v != center && sub.degree(v) == 2)
                    .collect();
                let rest_ok = sub
                    .vertices()
                    .filter(|&v| v != center && sub.degree(v) != 2)
                    .all(|v| sub.degree(v) == 1);
                if deg2.len() == 2 && sub.has_edge(deg2[0], deg2[1]) && rest_ok {
                    Ok(ComponentShape::StarWithTriangle)
                } else {
                    Err(fail())
                }
            } else {
                Err(fail())
            }
        }
        other => Err(KernelError::SmallKernelNeedsD45(other)),
    }
}

/// Structure and size audit of a reduced instance against a maximal
/// packing: classifies every remainder component and counts edges on and
/// off the packing.
pub fn audit_kernel_size(inst: &PvcInstance, packing: &Packing) -> Result<AuditStats, KernelError> {
    let m_set = packing.vertex_set();
    let outside: BTreeSet<VertexId> = inst
        .graph
        .vertices()
        .filter(|v| !m_set.contains(v))
        .collect();
    let ga = inst.graph.induced_subgraph(&outside)?;
    let mut audit = AuditStats {
        edges_outside_packing: ga.edge_count(),
        edges_on_packing: inst.graph.edge_count() - ga.edge_count(),
        max_degree: inst
            .graph
            .vertices()
            .map(|v| inst.graph.degree(v))
            .max()
            .unwrap_or(0),
        ..AuditStats::default()
    };
    for comp in ga.connected_components() {
        match classify_component(&ga, &comp, inst.d)? {
            ComponentShape::Star => audit.components_star += 1,
            ComponentShape::Triangle => audit.components_triangle += 1,
            ComponentShape::Small => audit.components_small += 1,
            ComponentShape::StarWithTriangle => audit.components_star_with_triangle += 1,
            ComponentShape::DiStar => audit.components_di_star += 1,
        }
    }
    Ok(audit)
}

/// Full d ∈ {4, 5} kernelization: rules 1-4 exhaustively (priority order,
/// restart after any change), then the greedy packing either decides the
/// instance or certifies the kernel, whose degree and edge bounds are
/// asserted.
pub fn kernelize_small(
    inst: &PvcInstance,
) -> Result<(PvcInstance, ReductionTrace, KernelStats), KernelError> {
    if inst.d != 4 && inst.d != 5 {
        return Err(KernelError::SmallKernelNeedsD45(inst.d));
    }
    let mut work = inst.clone();
    work.decided = None;
    let mut trace = ReductionTrace::default();
    let mut firings = RuleFirings::default();

    while work.decided.is_none() {
        let swept = strip_path_free_components(&mut work, false)?;
        if !swept.is_empty() {
            firings.component += swept.len();
            trace.events.extend(swept);
            continue;
        }
        if let Some(ev) = rule_degree_one(&mut work) {
            firings.degree_one_twin += 1;
            trace.events.push(ev);
            continue;
        }
        let events = rule_matching(&mut work)?;
        if !events.is_empty() {
            firings.high_degree += 1;
            firings.k_decrement += 1;
            trace.events.extend(events);
            continue;
        }
        if let Some(ev) = rule_expansion(&mut work)? {
            firings.expansion_edge += 1;
            trace.events.push(ev);
            continue;
        }
        break;
    }

    let mut stats = KernelStats {
        n_in: inst.graph.vertex_count(),
        m_in: inst.graph.edge_count(),
        n_out: work.graph.vertex_count(),
        m_out: work.graph.edge_count(),
        d: inst.d,
        k: work.k,
        method: "small".into(),
        decided: None,
        rule_firings: firings,
        bound: None,
        bound_satisfied: None,
        margin: None,
        packing_size: 0,
        marks: None,
        audit: None,
    };

    if work.decided == Some(false) {
        stats.decided = Some("no".into());
        return Ok((work, trace, stats));
    }
    if work.graph.is_empty() {
        work.decided = Some(true);
        stats.decided = Some("yes".into());
        return Ok((work, trace, stats));
    }

    match greedy_packing(&work.graph, work.d, work.k)? {
        PackingOutcome::PathFree => {
            // unreachable in practice: rule 1 strips path-free components
            work.decided = Some(true);
            stats.decided = Some("yes".into());
        }
        PackingOutcome::Exceeded => {
            work.decided = Some(false);
            stats.decided = Some("no".into());
        }
        PackingOutcome::Packing(packing) => {
            stats.packing_size = packing.size();
            let audit = audit_kernel_size(&work, &packing)?;
            let bound = edge_bound(work.d, work.k).expect("d is 4 or 5");
            let deg_ok = audit.max_degree <= degree_bound(work.d, work.k);
            let size_ok = work.graph.edge_count() <= bound;
            stats.bound = Some(bound);
            stats.bound_satisfied = Some(size_ok);
            stats.margin = Some(bound as i64 - work.graph.edge_count() as i64);
            stats.audit = Some(audit);
            assert!(deg_ok, "degree bound violated after rules 3-4");
            assert!(size_ok, "edge bound violated on a reduced instance");
        }
    }
    Ok((work, trace, stats))
}
