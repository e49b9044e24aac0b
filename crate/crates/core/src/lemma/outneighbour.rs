use std::collections::BTreeMap;

use serde::Serialize;

use crate::cayley::CayleyDigraph;
use crate::error::{Error, Result};
use crate::group::{ConnectionSet, FiniteAbelianGroup};
use crate::limits::Limits;

/// Classes of vertices with identical out-neighbourhoods, each sorted, in
/// order of their least vertex.
pub fn same_outneighbour_classes(x: &CayleyDigraph) -> Vec<Vec<usize>> {
    let mut by_row: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in 0..x.order() {
        let row = x.out_neighbours(v).expect("vertex in range");
        by_row.entry(row).or_default().push(v);
    }
    let mut classes: Vec<Vec<usize>> = by_row.into_values().collect();
    classes.sort_unstable_by_key(|c| c[0]);
    classes
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutneighbourCase {
    pub set: Vec<usize>,
    /// The first class meeting the size bound. Classes are cosets of one
    /// subgroup, so all have the same size.
    pub class: Vec<usize>,
    pub set_is_subgroup: bool,
}

/// The lemma on one connection set: `None` if no class meets the size bound
/// `max(|S| - 1, 2)`.
pub fn check_outneighbour(x: &CayleyDigraph) -> Option<OutneighbourCase> {
    let s = x.connection_set();
    let bound = (s.len().saturating_sub(1)).max(2);
    let class = same_outneighbour_classes(x).into_iter().find(|c| c.len() >= bound)?;
    Some(OutneighbourCase { set: s.indices().to_vec(), class, set_is_subgroup: s.is_subgroup() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityFreeViolation {
    pub case: OutneighbourCase,
    /// `S` is empty or a single coset of its stabilizer missing the identity.
    pub explained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutneighbourReport {
    pub group_moduli: Vec<u32>,
    pub sets_checked: usize,
    /// Sets containing the identity where a large class exists.
    pub applicable: usize,
    /// Identity-containing sets violating the lemma.
    pub counterexamples: Vec<OutneighbourCase>,
    pub identity_free_violations: Vec<IdentityFreeViolation>,
}

impl OutneighbourReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.identity_free_violations.iter().all(|v| v.explained)
    }
}

fn stabilizer(set: &ConnectionSet) -> Vec<usize> {
    let g = set.group();
    (0..g.order()).filter(|&d| set.translate(d) == *set).collect()
}

fn explains(set: &ConnectionSet) -> bool {
    set.is_empty() || (!set.contains_identity() && stabilizer(set).len() == set.len())
}

/// Runs the lemma over every subset of `G`.
pub fn verify_outneighbour_lemma(group: &FiniteAbelianGroup, limits: &Limits) -> Result<OutneighbourReport> {
    let order = group.order();
    if order as u64 > limits.ci_group_order {
        return Err(Error::infeasible("group order for exhaustive subset scan", limits.ci_group_order as u128, order as u128));
    }
    let mut report = OutneighbourReport {
        group_moduli: group.moduli().to_vec(),
        sets_checked: 0,
        applicable: 0,
        counterexamples: Vec::new(),
        identity_free_violations: Vec::new(),
    };
    for mask in 0u64..(1 << order) {
        let set = ConnectionSet::from_indices(group, (0..order).filter(|&i| mask >> i & 1 == 1))?;
        let x = CayleyDigraph::new(group, &set)?;
        report.sets_checked += 1;
        let Some(case) = check_outneighbour(&x) else { continue };
        if set.contains_identity() {
            report.applicable += 1;
            if !case.set_is_subgroup {
                report.counterexamples.push(case);
            }
        } else if !case.set_is_subgroup {
            report.identity_free_violations.push(IdentityFreeViolation { explained: explains(&set), case });
        }
    }
    Ok(report)
}
