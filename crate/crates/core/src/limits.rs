//! Feasibility caps shared by the enumeration-backed operations.
//!
//! Every cap is a hard gate: exceeding it yields [`Error::Infeasible`](crate::Error::Infeasible),
//! never a truncated answer.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest group order for which element-by-element enumeration is allowed.
    pub enumeration_order: u64,
    /// Largest |GL(r, p)| for which automorphisms of (Z_p)^r are enumerated.
    pub gl_order: u128,
    /// Largest group order for brute-force automorphism enumeration of
    /// non-elementary groups.
    pub brute_force_aut_order: u64,
    /// Vertex cap for the X vs X^- isomorphism fallback in the hypothesis check.
    pub iso_fallback_vertices: usize,
    /// Vertex cap for canonical labeling and automorphism groups.
    pub canon_vertices: usize,
    /// Largest permutation group order searched for regular subgroups.
    pub subgroup_search_order: u128,
    /// Recursion-node budget for maximal clique enumeration.
    pub clique_budget: u64,
    /// Largest group order for the definitional CI/DCI scans.
    pub definitional_order: u64,
    /// Largest group order for whole-group CI/DCI decisions.
    pub ci_group_order: u64,
    /// Largest materialized adjacency (vertex count) for a Cayley digraph.
    pub materialize_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_order: 1_000_000,
            gl_order: 100_000_000,
            brute_force_aut_order: 64,
            iso_fallback_vertices: 2000,
            canon_vertices: 2000,
            subgroup_search_order: 10_000_000,
            clique_budget: 10_000_000,
            definitional_order: 16,
            ci_group_order: 12,
            materialize_vertices: 16_384,
        }
    }
}
