//! Problem instance bundle shared by the kernelization pipelines.

use crate::graph::Graph;

/// A d-path vertex cover instance: decide whether `k` deletions make the
/// graph free of paths on `d` vertices.
///
/// `decided` is set by the kernelizers when the rules or the packing settle
/// the instance outright; `Some(true)` means YES, `Some(false)` means NO.
#[derive(Clone, Debug)]
pub struct PvcInstance {
    pub graph: Graph,
    pub d: usize,
    pub k: usize,
    pub decided: Option<bool>,
}

impl PvcInstance {
    pub fn new(graph: Graph, d: usize, k: usize) -> Self {
        PvcInstance {
            graph,
            d,
            k,
            decided: None,
        }
    }
}
