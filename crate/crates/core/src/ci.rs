//! CI and DCI decisions for Cayley (di)graphs of small abelian groups, by
//! the definition (scan all isomorphic connection sets) and by Babai's
//! criterion (regular subgroups of the automorphism group).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon;
use crate::cayley::CayleyDigraph;
use crate::error::{Error, Result};
use crate::group::{enumerate_automorphisms, ConnectionSet, FiniteAbelianGroup};
use crate::limits::Limits;
use crate::perm::{enumerate_regular_subgroups, right_regular_representation, ConjugacyClass, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Definitional,
    Babai,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Definitional => "definitional",
            Method::Babai => "babai",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "definitional" => Ok(Method::Definitional),
            "babai" => Ok(Method::Babai),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CiWitness {
    /// `Cay(G; S) ≅ Cay(G; other_set)` via `isomorphism`, and no group
    /// automorphism maps `S` to `other_set`.
    Definitional { other_set: Vec<usize>, isomorphism: Vec<usize> },
    /// A regular subgroup of the automorphism group, isomorphic to `G` and not
    /// conjugate to `G_R`.
    Babai { generators: Vec<Vec<usize>>, regular_subgroups: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CiVerdict {
    pub group_moduli: Vec<u32>,
    pub set: Vec<usize>,
    pub directed: bool,
    pub method: Method,
    pub is_ci: bool,
    pub witness: Option<CiWitness>,
}

fn aut_orbit(set: &ConnectionSet, limits: &Limits) -> Result<BTreeSet<Vec<usize>>> {
    let mut orbit = BTreeSet::new();
    for alpha in enumerate_automorphisms(set.group(), limits)? {
        orbit.insert(alpha.apply(set)?.indices().to_vec());
    }
    Ok(orbit)
}

/// `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else { return out };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn definitional(group: &FiniteAbelianGroup, set: &ConnectionSet, directed: bool, limits: &Limits) -> Result<CiVerdict> {
    let order = group.order();
    if order as u64 > limits.definitional_order {
        return Err(Error::infeasible("group order for the definitional scan", limits.definitional_order as u128, order as u128));
    }
    if set.group() != group {
        return Err(Error::GroupMismatch { expected: group.moduli().to_vec(), actual: set.group().moduli().to_vec() });
    }
    let orbit = aut_orbit(set, limits)?;
    let x = CayleyDigraph::new(group, set)?.to_digraph(limits)?;
    let target = canon::canonical_form(&x, limits)?;
    let has_identity = set.contains_identity();
    let candidates: Vec<Vec<usize>> = combinations(order, set.len())
        .into_iter()
        .filter(|c| c.contains(&0) == has_identity && !orbit.contains(c))
        .collect();
    let found = candidates
        .par_iter()
        .map(|c| -> Result<Option<CiWitness>> {
            let other = ConnectionSet::from_indices(group, c.iter().copied())?;
            if !directed && !other.is_symmetric() {
                return Ok(None);
            }
            let y = CayleyDigraph::new(group, &other)?.to_digraph(limits)?;
            if canon::canonical_form(&y, limits)?.bytes != target.bytes {
                return Ok(None);
            }
            let iso = canon::are_isomorphic(&x, &y, limits)?
                .ok_or_else(|| Error::Precondition("equal canonical forms without an isomorphism".into()))?;
            Ok(Some(CiWitness::Definitional { other_set: c.clone(), isomorphism: iso.to_usize() }))
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .transpose()?
        .flatten();
    Ok(CiVerdict {
        group_moduli: group.moduli().to_vec(),
        set: set.indices().to_vec(),
        directed,
        method: Method::Definitional,
        is_ci: found.is_none(),
        witness: found,
    })
}

/// DCI test by the definition: every `S'` with `Cay(G; S') ≅ Cay(G; S)` is
/// an automorphic image of `S`.
pub fn is_dci_digraph_definitional(group: &FiniteAbelianGroup, set: &ConnectionSet, limits: &Limits) -> Result<CiVerdict> {
    definitional(group, set, true, limits)
}

/// CI test by the definition, over symmetric `S'` only.
pub fn is_ci_graph_definitional(group: &FiniteAbelianGroup, set: &ConnectionSet, limits: &Limits) -> Result<CiVerdict> {
    if !set.is_symmetric() {
        return Err(Error::AsymmetricSet);
    }
    definitional(group, set, false, limits)
}

/// CI/DCI test by Babai's criterion.
pub fn is_ci_via_babai(
    group: &FiniteAbelianGroup,
    set: &ConnectionSet,
    directed: bool,
    limits: &Limits,
) -> Result<CiVerdict> {
    if !directed && !set.is_symmetric() {
        return Err(Error::AsymmetricSet);
    }
    let x = CayleyDigraph::new(group, set)?.to_digraph(limits)?;
    let aut = canon::automorphism_group(&x, limits)?;
    let g_r = right_regular_representation(group, limits)?;
    if !aut.contains_group(&g_r) {
        return Err(Error::Precondition("automorphism group misses the translations".into()));
    }
    let regular = enumerate_regular_subgroups(&aut, group, limits)?;
    let class = ConjugacyClass::new(&g_r, &aut, limits)?;
    let mut witness = None;
    for m in &regular {
        if class.conjugator_to(m, limits)?.is_none() {
            witness = Some(CiWitness::Babai {
                generators: m.generators().iter().map(Permutation::to_usize).collect(),
                regular_subgroups: regular.len(),
            });
            break;
        }
    }
    Ok(CiVerdict {
        group_moduli: group.moduli().to_vec(),
        set: set.indices().to_vec(),
        directed,
        method: Method::Babai,
        is_ci: witness.is_none(),
        witness,
    })
}

pub fn is_ci(
    group: &FiniteAbelianGroup,
    set: &ConnectionSet,
    directed: bool,
    method: Method,
    limits: &Limits,
) -> Result<CiVerdict> {
    match (method, directed) {
        (Method::Definitional, true) => is_dci_digraph_definitional(group, set, limits),
        (Method::Definitional, false) => is_ci_graph_definitional(group, set, limits),
        (Method::Babai, _) => is_ci_via_babai(group, set, directed, limits),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupCiVerdict {
    pub group_moduli: Vec<u32>,
    pub directed: bool,
    pub sets_checked: usize,
    pub is_ci: bool,
    /// Verdict for the lexicographically first failing set.
    pub first_failure: Option<CiVerdict>,
}

/// Whether every Cayley digraph (`directed`) or graph of `G` is DCI/CI.
///
/// Every subset is canonically labelled once; `G` passes iff each
/// isomorphism class of connection sets is a single `Aut(G)`-orbit.
pub fn is_ci_group(group: &FiniteAbelianGroup, directed: bool, limits: &Limits) -> Result<GroupCiVerdict> {
    let order = group.order();
    if order as u64 > limits.ci_group_order {
        return Err(Error::infeasible("group order for the whole-group scan", limits.ci_group_order as u128, order as u128));
    }
    let mut sets: Vec<ConnectionSet> = (0u64..1 << order)
        .map(|m| ConnectionSet::from_indices(group, (0..order).filter(|&i| m >> i & 1 == 1)))
        .collect::<Result<_>>()?;
    if !directed {
        sets.retain(ConnectionSet::is_symmetric);
    }
    sets.sort_by(|a, b| a.indices().cmp(b.indices()));
    let forms: Vec<Vec<u8>> = sets
        .par_iter()
        .map(|s| Ok(canon::canonical_form(&CayleyDigraph::new(group, s)?.to_digraph(limits)?, limits)?.bytes))
        .collect::<Result<_>>()?;
    let mut classes: HashMap<&[u8], Vec<usize>> = HashMap::new();
    for (i, f) in forms.iter().enumerate() {
        classes.entry(f).or_default().push(i);
    }
    let autos: Vec<_> = enumerate_automorphisms(group, limits)?.collect();
    let mut orbit_of: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut first_bad = None;
    for (i, s) in sets.iter().enumerate() {
        if orbit_of.contains_key(s.indices()) {
            continue;
        }
        for a in &autos {
            orbit_of.entry(a.apply(s)?.indices().to_vec()).or_insert(i);
        }
        let orbit_size = orbit_of.values().filter(|&&o| o == i).count();
        if first_bad.is_none() && classes[&forms[i][..]].len() != orbit_size {
            first_bad = Some(i);
        }
    }
    let first_failure = match first_bad {
        Some(i) => Some(definitional(group, &sets[i], directed, limits)?),
        None => None,
    };
    Ok(GroupCiVerdict {
        group_moduli: group.moduli().to_vec(),
        directed,
        sets_checked: sets.len(),
        is_ci: first_failure.is_none(),
        first_failure,
    })
}

/// Abelian groups of order `2..=max_order`, one per isomorphism type, as
/// invariant-factor moduli `m_1 | m_2 | ...`, ordered by order, then rank.
pub fn abelian_groups_up_to(max_order: usize) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, order: usize, max_order: usize, out: &mut Vec<Vec<u32>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        let (first, step) = match prefix.last() {
            Some(&l) => (l as usize, l as usize),
            None => (2, 1),
        };
        let mut m = first;
        while order * m <= max_order {
            prefix.push(m as u32);
            extend(prefix, order * m, max_order, out);
            prefix.pop();
            m += step;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_order, &mut out);
    out.sort_by_key(|m| (m.iter().map(|&x| x as usize).product::<usize>(), m.len(), m.clone()));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupAgreement {
    pub group_moduli: Vec<u32>,
    pub directed_sets: usize,
    pub undirected_sets: usize,
    pub non_dci_sets: usize,
    pub non_ci_sets: usize,
    /// `(set, directed)` pairs where the two methods disagree.
    pub disagreements: Vec<(Vec<usize>, bool)>,
}

/// Definitional and Babai verdicts on every connection set of `G`: all
/// subsets as digraphs, symmetric subsets also as graphs.
pub fn method_agreement(group: &FiniteAbelianGroup, limits: &Limits) -> Result<GroupAgreement> {
    let order = group.order();
    if order as u64 > limits.definitional_order {
        return Err(Error::infeasible("group order for the agreement sweep", limits.definitional_order as u128, order as u128));
    }
    let sets: Vec<ConnectionSet> = (0u64..1 << order)
        .map(|m| ConnectionSet::from_indices(group, (0..order).filter(|&i| m >> i & 1 == 1)))
        .collect::<Result<_>>()?;
    let rows: Vec<(Vec<usize>, bool, bool, bool)> = sets
        .par_iter()
        .map(|s| {
            let mut rows = Vec::new();
            for directed in [true, false] {
                if !directed && !s.is_symmetric() {
                    continue;
                }
                let d = is_ci(group, s, directed, Method::Definitional, limits)?.is_ci;
                let b = is_ci(group, s, directed, Method::Babai, limits)?.is_ci;
                rows.push((s.indices().to_vec(), directed, d, b));
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(GroupAgreement {
        group_moduli: group.moduli().to_vec(),
        directed_sets: rows.iter().filter(|r| r.1).count(),
        undirected_sets: rows.iter().filter(|r| !r.1).count(),
        non_dci_sets: rows.iter().filter(|r| r.1 && !r.2).count(),
        non_ci_sets: rows.iter().filter(|r| !r.1 && !r.2).count(),
        disagreements: rows.into_iter().filter(|r| r.2 != r.3).map(|r| (r.0, r.1)).collect(),
    })
}
