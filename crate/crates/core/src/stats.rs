//! Kernelization statistics, serialized as the STATS.json record.
//!
//! Every number here is recomputable from the reduced instance plus the
//! reduction trace; the record exists so harnesses do not have to.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleFirings {
    pub component: usize,
    pub degree_one_twin: usize,
    pub high_degree: usize,
    pub expansion_edge: usize,
    pub k_decrement: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseMarks {
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkPhases {
    /// Everything inside the packing-plus-kept-forest subgraph.
    pub base: PhaseMarks,
    /// Witness paths for resolved requests.
    pub resolved: PhaseMarks,
    /// Component witness paths for sub-requests (direct and recursive).
    pub subrequest: PhaseMarks,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkStats {
    pub by_phase: MarkPhases,
    pub packing_vertices: usize,
    pub kept_forest_vertices: usize,
    pub requests_total: usize,
    pub requests_resolved: usize,
    pub subrequests: usize,
    pub mark2_calls: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditStats {
    pub components_star: usize,
    pub components_triangle: usize,
    pub components_small: usize,
    pub components_star_with_triangle: usize,
    pub components_di_star: usize,
    pub edges_on_packing: usize,
    pub edges_outside_packing: usize,
    pub max_degree: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KernelStats {
    pub n_in: usize,
    pub m_in: usize,
    pub n_out: usize,
    pub m_out: usize,
    pub d: usize,
    /// Parameter after reduction (the rules may decrement it).
    pub k: usize,
    pub method: String,
    /// `"yes"` / `"no"` when the instance was decided en route.
    pub decided: Option<String>,
    pub rule_firings: RuleFirings,
    /// Edge bound guaranteed for the reduced instance, when one applies.
    pub bound: Option<usize>,
    pub bound_satisfied: Option<bool>,
    pub margin: Option<i64>,
    pub packing_size: usize,
    pub marks: Option<MarkStats>,
    pub audit: Option<AuditStats>,
}

impl KernelStats {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialize")
    }
}
