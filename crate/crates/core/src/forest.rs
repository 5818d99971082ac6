//! Rooted DFS forest of the graph outside a packing, with ancestor and
//! subtree queries.
//!
//! Roots are the minimum-id vertex of each component and children are
//! explored in ascending id order. As long as the packing is maximal the
//! remainder graph has no d-path, so every tree is shallow; the kernel
//! pipeline asserts that. DFS guarantees that every non-tree edge of the
//! remainder joins an ancestor-descendant pair.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Graph, VertexId};

#[derive(Clone, Debug)]
pub struct DfsForest {
    parent: BTreeMap<VertexId, Option<VertexId>>,
    children: BTreeMap<VertexId, Vec<VertexId>>,
    depth: BTreeMap<VertexId, usize>,
    tin: BTreeMap<VertexId, usize>,
    tout: BTreeMap<VertexId, usize>,
    roots: Vec<VertexId>,
}

/// DFS forest over `G ∖ M`.
pub fn build_dfs_forest(g: &Graph, m: &BTreeSet<VertexId>) -> DfsForest {
    let mut forest = DfsForest {
        parent: BTreeMap::new(),
        children: BTreeMap::new(),
        depth: BTreeMap::new(),
        tin: BTreeMap::new(),
        tout: BTreeMap::new(),
        roots: Vec::new(),
    };
    let mut clock = 0usize;
    let live: Vec<VertexId> = g.vertices().filter(|v| !m.contains(v)).collect();
    for &root in &live {
        if forest.tin.contains_key(&root) {
            continue;
        }
        forest.roots.push(root);
        forest.parent.insert(root, None);
        forest.depth.insert(root, 0);
        forest.tin.insert(root, clock);
        clock += 1;
        forest.children.insert(root, Vec::new());
        // resumable neighbor cursors keep the traversal identical to the
        // recursive formulation without risking deep stacks
        let mut stack: Vec<(VertexId, Vec<VertexId>, usize)> = vec![(
            root,
            g.neighbors(root).filter(|w| !m.contains(w)).collect(),
            0,
        )];
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.2 < top.1.len() {
                let w = top.1[top.2];
                top.2 += 1;
                if forest.tin.contains_key(&w) {
                    continue;
                }
                forest.parent.insert(w, Some(v));
                forest.children.get_mut(&v).unwrap().push(w);
                forest.children.insert(w, Vec::new());
                forest.depth.insert(w, forest.depth[&v] + 1);
                forest.tin.insert(w, clock);
                clock += 1;
                stack.push((w, g.neighbors(w).filter(|x| !m.contains(x)).collect(), 0));
            } else {
                forest.tout.insert(v, clock);
                clock += 1;
                stack.pop();
            }
        }
    }
    forest
}

impl DfsForest {
    pub fn contains(&self, v: VertexId) -> bool {
        self.parent.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.parent.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn roots(&self) -> &[VertexId] {
        &self.roots
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[&v]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[&v]
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[&v]
    }

    pub fn max_depth(&self) -> usize {
        self.depth.values().copied().max().unwrap_or(0)
    }

    /// Is `u` an ancestor of `v`? Every vertex is an ancestor of itself.
    pub fn is_ancestor(&self, u: VertexId, v: VertexId) -> bool {
        self.tin[&u] <= self.tin[&v] && self.tout[&v] <= self.tout[&u]
    }

    /// Ancestors of `v`, starting at `v` itself and ending at its root.
    pub fn ancestors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[&cur] {
            out.push(p);
            cur = p;
        }
        out
    }

    /// Vertex set of the maximal subtree rooted at `v`.
    pub fn subtree(&self, v: VertexId) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            out.insert(x);
            stack.extend(self.children[&x].iter().copied());
        }
        out
    }

    /// Vertices in postorder: children always before their parent.
    pub fn postorder(&self) -> Vec<VertexId> {
        let mut order: Vec<VertexId> = self.vertices().collect();
        order.sort_by_key(|v| self.tout[v]);
        order
    }

    /// Leaves of the subforest induced by an ancestor-closed vertex set:
    /// members with no child in the set.
    pub fn leaves_within(&self, set: &BTreeSet<VertexId>) -> Vec<VertexId> {
        set.iter()
            .copied()
            .filter(|v| self.children[v].iter().all(|c| !set.contains(c)))
            .collect()
    }

    /// Checks the DFS property: every `G ∖ M` edge not in the forest joins
    /// an ancestor-descendant pair.
    pub fn check_back_edges(&self, g: &Graph, m: &BTreeSet<VertexId>) {
        for (u, v) in g.edges() {
            if m.contains(&u) || m.contains(&v) {
                continue;
            }
            assert!(
                self.is_ancestor(u, v) || self.is_ancestor(v, u),
                "edge {{{u}, {v}}} is neither tree nor back edge"
            );
        }
    }
}
