//! The hat construction `X̂ = Cay(Ĝ; Ŝ^{±1})` with `Ĝ = G × A × B`,
//! `A = B = Z_n` and `Ŝ = G ∪ Sb ∪ A ∪ Ab`, together with the hypothesis
//! checks that make `X̂` a non-CI witness, the explicit (Z_3)^8 digraph and
//! the pipelines for `(Z_p)^{r+2}` and `(Z_p)^{r+3}`.
//!
//! Vertex `(g, a, v)` of `X̂` has index `g·n² + a·n + v`, where `g` is the
//! index of the `G`-part; `A` and `B` are the last two coordinates.

use std::fmt;

use serde::Serialize;

use crate::canon;
use crate::cayley::CayleyDigraph;
use crate::error::{Error, Result};
use crate::group::{enumerate_automorphisms, is_prime, ConnectionSet, FiniteAbelianGroup, GroupAutomorphism};
use crate::limits::Limits;
use crate::perm::Permutation;

/// `k = 2` for `n > 3`, `k = 3` for `n = 3`.
pub fn k_of(n: u32) -> Result<u32> {
    match n {
        0..=2 => Err(Error::SmallN(n as u64)),
        3 => Ok(3),
        _ => Ok(2),
    }
}

/// `(G ∖ S) ∪ {1_G}`.
pub fn complement_trick(set: &ConnectionSet) -> ConnectionSet {
    set.complement().with_identity()
}

#[derive(Clone, Debug)]
pub struct HatConstruction {
    base_group: FiniteAbelianGroup,
    base_set: ConnectionSet,
    n: u32,
    k: u32,
    hat_group: FiniteAbelianGroup,
    hat_set: ConnectionSet,
    hat_graph: CayleyDigraph,
}

/// Sidecar record describing how the hat group's coordinates split.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HatMetadata {
    pub base_moduli: Vec<u32>,
    pub hat_moduli: Vec<u32>,
    pub n: u32,
    pub k: u32,
    /// Coordinate of `A` in the hat group.
    pub a_coordinate: usize,
    /// Coordinate of `B` in the hat group.
    pub b_coordinate: usize,
    /// Vertex index of `b`.
    pub b_index: usize,
    pub base_set_size: usize,
    pub hat_set_size: usize,
    pub vertices: usize,
    pub degree: usize,
}

/// Builds `X̂` from `Cay(G; S)`. The identity is added to `S` first.
pub fn build_hat(group: &FiniteAbelianGroup, set: &ConnectionSet, n: u32) -> Result<HatConstruction> {
    let k = k_of(n)?;
    if set.group() != group {
        return Err(Error::GroupMismatch { expected: group.moduli().to_vec(), actual: set.group().moduli().to_vec() });
    }
    if group.order() < 2 {
        return Err(Error::InvalidParameter("the base group must be nontrivial".into()));
    }
    if set.is_symmetric() {
        return Err(Error::SymmetricSet);
    }
    let base_set = set.with_identity();
    let tail = FiniteAbelianGroup::new(&[n, n])?;
    let hat_group = group.direct_product(&tail)?;
    let nn = n as usize;
    let g_order = group.order();
    let mut idx = Vec::with_capacity(g_order + base_set.len() + 2 * nn);
    // G, Sb, A, Ab
    idx.extend((0..g_order).map(|g| g * nn * nn));
    idx.extend(base_set.indices().iter().map(|&s| s * nn * nn + 1));
    idx.extend((0..nn).map(|a| a * nn));
    idx.extend((0..nn).map(|a| a * nn + 1));
    let hat_set = ConnectionSet::from_indices(&hat_group, idx)?;
    let hat_graph = CayleyDigraph::new(&hat_group, &hat_set.symmetric_closure())?.to_undirected()?;
    Ok(HatConstruction { base_group: group.clone(), base_set, n, k, hat_group, hat_set, hat_graph })
}

impl HatConstruction {
    pub fn base_group(&self) -> &FiniteAbelianGroup {
        &self.base_group
    }

    /// `S` with the identity included.
    pub fn base_set(&self) -> &ConnectionSet {
        &self.base_set
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn hat_group(&self) -> &FiniteAbelianGroup {
        &self.hat_group
    }

    /// `Ŝ` (not symmetrized).
    pub fn hat_set(&self) -> &ConnectionSet {
        &self.hat_set
    }

    pub fn hat_graph(&self) -> &CayleyDigraph {
        &self.hat_graph
    }

    /// `Cay(G; S)` with loops.
    pub fn base_digraph(&self) -> CayleyDigraph {
        CayleyDigraph::new(&self.base_group, &self.base_set).expect("same group")
    }

    pub fn vertex_count(&self) -> usize {
        self.hat_group.order()
    }

    /// Valency of `X̂`, loops excluded.
    pub fn degree(&self) -> usize {
        self.hat_graph.loopless_degree()
    }

    pub fn b_index(&self) -> usize {
        1
    }

    /// Vertex index of `(g, a, v)`.
    #[inline]
    pub fn join(&self, g: usize, a: usize, v: usize) -> usize {
        let n = self.n as usize;
        (g * n + a) * n + v
    }

    /// `(g, a, v)` of a vertex index.
    #[inline]
    pub fn split(&self, x: usize) -> (usize, usize, usize) {
        let n = self.n as usize;
        (x / (n * n), (x / n) % n, x % n)
    }

    pub fn metadata(&self) -> HatMetadata {
        let r = self.base_group.rank();
        HatMetadata {
            base_moduli: self.base_group.moduli().to_vec(),
            hat_moduli: self.hat_group.moduli().to_vec(),
            n: self.n,
            k: self.k,
            a_coordinate: r,
            b_coordinate: r + 1,
            b_index: self.b_index(),
            base_set_size: self.base_set.len(),
            hat_set_size: self.hat_set.len(),
            vertices: self.vertex_count(),
            degree: self.degree(),
        }
    }

    /// The coset `G·x`, sorted.
    pub fn g_coset(&self, x: usize) -> Vec<usize> {
        let (_, a, v) = self.split(x);
        (0..self.base_group.order()).map(|g| self.join(g, a, v)).collect()
    }

    /// `Ax ∪ Abx` for `n > 3`, `ABx` for `n = 3`; sorted.
    pub fn ab_clique(&self, x: usize) -> Vec<usize> {
        let (g, _, v) = self.split(x);
        let n = self.n as usize;
        let vs: Vec<usize> = if n == 3 { (0..n).collect() } else { vec![v, (v + 1) % n] };
        let mut out: Vec<usize> = (0..n).flat_map(|a| vs.iter().map(move |&w| (a, w))).map(|(a, w)| self.join(g, a, w)).collect();
        out.sort_unstable();
        out
    }
}

/// Maps `(g, u, v) ↦ (π(g), u + a, v + b)`; `π` must be an automorphism of
/// `Cay(G; S)`.
pub fn lift_automorphism(pi: &Permutation, a: u32, b: u32, hat: &HatConstruction) -> Result<Permutation> {
    let x = hat.base_digraph();
    let order = hat.base_group.order();
    if pi.degree() != order {
        return Err(Error::DegreeMismatch(order, pi.degree()));
    }
    let preserves = (0..order).all(|g| {
        x.connection_set().indices().iter().all(|&s| {
            let h = hat.base_group.add_idx(g, s);
            x.has_arc(pi.apply(g), pi.apply(h))
        })
    });
    if !preserves {
        return Err(Error::NotAnAutomorphism("permutation does not preserve the base digraph".into()));
    }
    let n = hat.n as usize;
    let (a, b) = (a as usize % n, b as usize % n);
    let images = (0..hat.vertex_count())
        .map(|x| {
            let (g, u, v) = hat.split(x);
            hat.join(pi.apply(g), (u + a) % n, (v + b) % n) as u32
        })
        .collect();
    Permutation::new(images)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Infeasible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Infeasible => "infeasible",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisRecord {
    pub id: String,
    pub verdict: Verdict,
    pub detail: String,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub group_moduli: Vec<u32>,
    pub n: u32,
    pub records: Vec<HypothesisRecord>,
    /// Whether `(G ∖ S) ∪ {1}` replaced `S` for the working bound.
    pub complement_applied: bool,
    pub working_set_size: usize,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.verdict == Verdict::Pass)
    }

    pub fn get(&self, id: &str) -> Option<&HypothesisRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn failures(&self) -> Vec<&HypothesisRecord> {
        self.records.iter().filter(|r| r.verdict != Verdict::Pass).collect()
    }
}

fn record(id: &str, ok: bool, detail: String, witness: Option<String>) -> HypothesisRecord {
    HypothesisRecord { id: id.into(), verdict: if ok { Verdict::Pass } else { Verdict::Fail }, detail, witness }
}

/// Evaluates the hypotheses under which `G × (Z_n)²` is shown not to be CI,
/// for a given non-DCI `Cay(G; S)`.
pub fn check_hypotheses(
    group: &FiniteAbelianGroup,
    set: &ConnectionSet,
    n: u32,
    limits: &Limits,
) -> Result<HypothesisReport> {
    if set.group() != group {
        return Err(Error::GroupMismatch { expected: group.moduli().to_vec(), actual: set.group().moduli().to_vec() });
    }
    let order = group.order() as u64;
    let k = k_of(n).ok();
    let with_id = set.with_identity();
    let mut records = Vec::new();

    records.push(record("h1", n >= 3, format!("n = {n}"), None));

    records.push(match k {
        Some(k) => record("h2", (n as u64) * (k as u64) != order, format!("nk = {} vs |G| = {order}", n * k), None),
        None => record("h2", false, "k undefined for n < 3".into(), None),
    });

    let h3 = n > 3 || 3 * with_id.len() as u64 <= order;
    records.push(record("h3", h3, format!("n = {n}, |S ∪ {{1}}| = {}, |G|/3 = {}", with_id.len(), order as f64 / 3.0), None));

    records.push(check_h4(group, set, limits)?);

    records.push(record("h5", !set.is_symmetric(), format!("S {} S^-1", if set.is_symmetric() { "=" } else { "≠" }), None));

    let complement_applied = 2 * with_id.len() as u64 > order + 1;
    let working = if complement_applied { complement_trick(&with_id) } else { with_id };
    records.push(match k {
        Some(k) => record(
            "bound",
            k as u64 * working.len() as u64 <= order + 1,
            format!(
                "|S| = {} ≤ (|G|+1)/k = {}{}",
                working.len(),
                (order + 1) as f64 / k as f64,
                if complement_applied { " after complement" } else { "" }
            ),
            None,
        ),
        None => record("bound", false, "k undefined for n < 3".into(), None),
    });

    Ok(HypothesisReport {
        group_moduli: group.moduli().to_vec(),
        n,
        records,
        complement_applied,
        working_set_size: working.len(),
    })
}

/// Either some `α ∈ Aut(G)` maps `S` to `S^{-1}`, or `X ≇ X^-`.
fn check_h4(group: &FiniteAbelianGroup, set: &ConnectionSet, limits: &Limits) -> Result<HypothesisRecord> {
    let inverse = set.inverse();
    let neg = GroupAutomorphism::negation(group);
    if neg.apply(set)? == inverse {
        return Ok(record("h4", true, "inversion maps S to S^-1".into(), Some("alpha: g -> -g".into())));
    }
    match enumerate_automorphisms(group, limits) {
        Ok(iter) => {
            for alpha in iter {
                if alpha.apply(set)? == inverse {
                    return Ok(record("h4", true, "automorphism maps S to S^-1".into(), Some(format!("alpha table {:?}", alpha.table()))));
                }
            }
        }
        Err(e) if e.is_infeasible() => {}
        Err(e) => return Err(e),
    }
    if group.order() > limits.iso_fallback_vertices {
        return Ok(HypothesisRecord {
            id: "h4".into(),
            verdict: Verdict::Infeasible,
            detail: format!("no automorphism found and X vs X^- exceeds {} vertices", limits.iso_fallback_vertices),
            witness: None,
        });
    }
    let x = CayleyDigraph::new(group, set)?.to_digraph(limits)?;
    match canon::are_isomorphic(&x, &x.reverse(), limits)? {
        None => Ok(record("h4", true, "X is not isomorphic to X^-".into(), None)),
        Some(iso) => Ok(record("h4", false, "X ≅ X^- and no automorphism maps S to S^-1".into(), Some(iso.to_string()))),
    }
}

/// One of the eleven pieces of the (Z_3)^8 connection set.
#[derive(Clone, Debug)]
pub struct SpigaPart {
    /// Coefficients of `w1, w2, w3`.
    pub label: (u32, u32, u32),
    pub set: ConnectionSet,
}

/// The eleven sets `S_{i,j,k}` in (Z_3)^8 with basis `w1, w2, w3, v1, ..., v5`
/// in coordinates 0..8.
pub fn spiga_parts() -> Vec<SpigaPart> {
    let g = FiniteAbelianGroup::elementary(3, 8).expect("valid");
    type Rule = fn(i64, i64, i64, i64) -> [i64; 5];
    let rules: [((u32, u32, u32), Rule); 10] = [
        ((1, 0, 0), |a, b, c, _| [a, b, 0, 0, c]),
        ((0, 1, 0), |a, b, c, d| [a, 0, b, c, d]),
        ((0, 0, 1), |a, b, c, d| [0, a, b, c, d]),
        ((1, 1, 0), |a, b, c, d| [a, b, c, b, d]),
        ((1, 0, 1), |a, b, c, d| [a, b, a, c, d]),
        ((0, 1, 1), |a, b, c, d| [a, b, c, d, -(a + b)]),
        ((1, 1, 1), |a, b, c, d| [a, b, c, d, -a - b + c + d]),
        ((2, 1, 1), |a, b, c, d| [a, b, c, d, -(a + b + c + d)]),
        ((1, 2, 1), |a, b, c, d| [a, b, c, d, a + b - c + d]),
        ((1, 1, 2), |a, b, c, d| [a, b, c, d, a + b + c - d]),
    ];
    let mut parts = Vec::with_capacity(11);
    let first: Vec<_> = [[0, 0, 0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 0, 0, 1]]
        .iter()
        .map(|c| g.element_reduced(c).expect("valid"))
        .collect();
    parts.push(SpigaPart { label: (0, 0, 0), set: ConnectionSet::from_elements(&g, &first).expect("valid") });
    for ((i, j, k), rule) in rules {
        let mut elems = Vec::with_capacity(81);
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let v = rule(a, b, c, d);
                        let coords = [i as i64, j as i64, k as i64, v[0], v[1], v[2], v[3], v[4]];
                        elems.push(g.element_reduced(&coords).expect("valid"));
                    }
                }
            }
        }
        parts.push(SpigaPart { label: (i, j, k), set: ConnectionSet::from_elements(&g, &elems).expect("valid") });
    }
    parts
}

/// The union of [`spiga_parts`]: 760 elements of (Z_3)^8.
pub fn spiga_connection_set() -> ConnectionSet {
    let parts = spiga_parts();
    let g = parts[0].set.group().clone();
    ConnectionSet::from_indices(&g, parts.iter().flat_map(|p| p.set.indices().iter().copied())).expect("valid")
}

/// Natural embedding of `S ⊆ (Z_p)^r` into `(Z_p)^{r+1}`.
pub fn embed_group(set: &ConnectionSet) -> Result<ConnectionSet> {
    let p = set
        .group()
        .elementary_prime()
        .or_else(|| {
            let m = set.group().moduli();
            (!m.is_empty() && m.iter().all(|&x| x == m[0])).then(|| m[0])
        })
        .ok_or_else(|| Error::InvalidParameter("embedding needs all moduli equal".into()))?;
    set.embed(p, 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WitnessMode {
    #[serde(rename = "r+2")]
    RPlus2,
    #[serde(rename = "r+3")]
    RPlus3,
}

impl std::str::FromStr for WitnessMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r+2" => Ok(WitnessMode::RPlus2),
            "r+3" => Ok(WitnessMode::RPlus3),
            _ => Err(Error::Parse(format!("unknown mode {s:?}, expected r+2 or r+3"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NonCiWitness {
    pub mode: WitnessMode,
    pub p: u32,
    pub r: usize,
    /// Tricks applied on the way, in order.
    pub tricks: Vec<String>,
    pub report: HypothesisReport,
    /// Present iff every hypothesis passed.
    pub hat: Option<HatConstruction>,
    /// Why the request was refused before the hypothesis check, if it was.
    pub rejection: Option<String>,
}

/// From a non-DCI `Cay((Z_p)^r; S)`, builds the hat graph that witnesses
/// `(Z_p)^{r+2}` (or, after embedding, `(Z_p)^{r+3}`) not being CI.
pub fn build_non_ci_witness(
    p: u32,
    r: usize,
    set: &ConnectionSet,
    mode: WitnessMode,
    limits: &Limits,
) -> Result<NonCiWitness> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if p == 2 {
        return Err(Error::InvalidParameter(
            "p = 2: every connection set of (Z_2)^r is symmetric, so CI and DCI coincide".into(),
        ));
    }
    let expected = FiniteAbelianGroup::elementary(p, r)?;
    if set.group() != &expected {
        return Err(Error::GroupMismatch { expected: expected.moduli().to_vec(), actual: set.group().moduli().to_vec() });
    }
    let mut tricks = Vec::new();
    let (mut s, mut r) = (set.clone(), r);
    if mode == WitnessMode::RPlus3 {
        s = embed_group(&s)?;
        r += 1;
        tricks.push(format!("embedded into (Z_{p})^{r}"));
    }
    let g = s.group().clone();
    let mut rejection = None;
    if p == 3 && (s.len() as u128) >= (p as u128).pow(r as u32 - 1) {
        rejection = Some(format!("p = 3 needs |S| < 3^{} = {}, got {}", r - 1, 3u64.pow(r as u32 - 1), s.len()));
    }
    let with_id = s.with_identity();
    if 2 * with_id.len() > g.order() + 1 {
        s = complement_trick(&with_id);
        tricks.push("complement (G \\ S) ∪ {1}".into());
    }
    let report = check_hypotheses(&g, &s, p, limits)?;
    let hat = if rejection.is_none() && report.all_pass() { Some(build_hat(&g, &s, p)?) } else { None };
    Ok(NonCiWitness { mode, p, r, tricks, report, hat, rejection })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn z(n: u32) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn set(g: &FiniteAbelianGroup, r: &[u64]) -> ConnectionSet {
        ConnectionSet::from_residues(g, r).unwrap()
    }

    /// Direct enumeration of `Ŝ` by membership predicate over all of `Ĝ`.
    fn hat_set_oracle(g: &FiniteAbelianGroup, s: &ConnectionSet, n: usize) -> BTreeSet<(usize, usize, usize)> {
        let mut out = BTreeSet::new();
        for x in 0..g.order() {
            for a in 0..n {
                for v in 0..n {
                    let in_g = a == 0 && v == 0;
                    let in_sb = a == 0 && v == 1 && s.contains_index(x);
                    let in_a = x == 0 && v == 0;
                    let in_ab = x == 0 && v == 1;
                    if in_g || in_sb || in_a || in_ab {
                        out.insert((x, a, v));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn k_examples() {
        assert_eq!(k_of(3).unwrap(), 3);
        assert_eq!(k_of(4).unwrap(), 2);
        assert_eq!(k_of(7).unwrap(), 2);
        assert!(k_of(2).is_err());
    }

    #[test]
    fn build_examples() {
        let g = z(5);
        let h = build_hat(&g, &set(&g, &[0, 1]), 4).unwrap();
        assert_eq!(h.vertex_count(), 80);
        assert_eq!(h.hat_set().len(), 13);
        assert_eq!(build_hat(&g, &set(&g, &[0, 1]), 3).unwrap().vertex_count(), 45);
        assert!(matches!(build_hat(&g, &set(&g, &[1, 4]), 4), Err(Error::SymmetricSet)));
        assert!(build_hat(&g, &set(&g, &[1]), 2).is_err());
    }

    #[test]
    fn hat_set_matches_direct_enumeration() {
        for order in 2..=8u32 {
            let g = z(order);
            for mask in 0u32..(1 << order) {
                let s = ConnectionSet::from_indices(&g, (0..order as usize).filter(|i| mask >> i & 1 == 1)).unwrap();
                if s.is_symmetric() {
                    continue;
                }
                for n in 3..=5u32 {
                    let h = build_hat(&g, &s, n).unwrap();
                    let got: BTreeSet<_> = h.hat_set().indices().iter().map(|&x| h.split(x)).collect();
                    let want = hat_set_oracle(&g, &s.with_identity(), n as usize);
                    assert_eq!(got, want);
                    let with_id = s.with_identity().len();
                    assert_eq!(h.hat_set().len(), g.order() + with_id + 2 * (n as usize - 1));
                    // b ∈ Ŝ even without the identity in S
                    assert!(h.hat_set().contains_index(h.b_index()));
                    // adding the identity first changes nothing
                    let h2 = build_hat(&g, &s.with_identity(), n).unwrap();
                    assert_eq!(h2.hat_set(), h.hat_set());
                    let sym: BTreeSet<_> = want
                        .iter()
                        .flat_map(|&(x, a, v)| {
                            [(x, a, v), (g.neg_idx(x), (n as usize - a) % n as usize, (n as usize - v) % n as usize)]
                        })
                        .filter(|&t| t != (0, 0, 0))
                        .collect();
                    assert_eq!(h.degree(), sym.len());
                }
            }
        }
    }

    #[test]
    fn hat_set_size_for_larger_groups() {
        for order in 9..=20u32 {
            let g = z(order);
            let s = set(&g, &[0, 1]);
            for n in 3..=5u32 {
                let h = build_hat(&g, &s, n).unwrap();
                assert_eq!(h.hat_set().len(), order as usize + 2 + 2 * (n as usize - 1));
            }
        }
    }

    #[test]
    fn complement_examples() {
        let g = z(4);
        assert_eq!(complement_trick(&set(&g, &[0, 1, 2])), set(&g, &[0, 3]));
        assert_eq!(complement_trick(&set(&g, &[0])), set(&g, &[0, 1, 2, 3]));
        for mask in 0u32..16 {
            let s = ConnectionSet::from_indices(&g, (0..4).filter(|i| mask >> i & 1 == 1)).unwrap();
            if s.contains_identity() {
                assert_eq!(complement_trick(&complement_trick(&s)), s);
            }
            if 2 * s.len() > 5 {
                assert!(2 * complement_trick(&s).len() <= 5);
            }
        }
    }

    #[test]
    fn hypothesis_examples() {
        let l = Limits::default();
        let g9 = z(9);
        let r = check_hypotheses(&g9, &set(&g9, &[0, 1]), 3, &l).unwrap();
        assert_eq!(r.get("h2").unwrap().verdict, Verdict::Fail);
        let g5 = z(5);
        let r = check_hypotheses(&g5, &set(&g5, &[0, 1]), 3, &l).unwrap();
        assert_eq!(r.get("h3").unwrap().verdict, Verdict::Fail);
        assert!(!r.all_pass());
        let r = check_hypotheses(&g5, &set(&g5, &[0, 1]), 4, &l).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert!(r.get("h4").unwrap().witness.as_deref().unwrap().contains("-g"));
        let r = check_hypotheses(&g5, &set(&g5, &[1, 4]), 4, &l).unwrap();
        assert_eq!(r.get("h5").unwrap().verdict, Verdict::Fail);
        let r = check_hypotheses(&g5, &set(&g5, &[0, 1, 2, 3]), 4, &l).unwrap();
        assert!(r.complement_applied);
        assert_eq!(r.working_set_size, 2);
    }

    #[test]
    fn spiga_census() {
        let parts = spiga_parts();
        let sizes: Vec<usize> = parts.iter().map(|p| p.set.len()).collect();
        assert_eq!(sizes, vec![4, 27, 81, 81, 81, 81, 81, 81, 81, 81, 81]);
        let s = spiga_connection_set();
        assert_eq!(s.len(), 760);
        assert!(!s.contains_identity());
        assert!(!s.is_symmetric());
        // the parts are separated by their (w1, w2, w3) coordinates
        for p in &parts {
            for e in p.set.elements() {
                assert_eq!((e.coords()[0], e.coords()[1], e.coords()[2]), p.label);
            }
        }
    }

    #[test]
    fn spiga_hypotheses() {
        let s = spiga_connection_set();
        let r = check_hypotheses(s.group(), &s, 3, &Limits::default()).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.working_set_size, 761);
    }

    #[test]
    fn embedding_examples() {
        let s = spiga_connection_set();
        let e = embed_group(&s).unwrap();
        assert_eq!((e.len(), e.group().order()), (760, 19683));
        let g = FiniteAbelianGroup::elementary(3, 2).unwrap();
        let e1 = ConnectionSet::from_elements(&g, &[g.basis(0)]).unwrap();
        let up = embed_group(&e1).unwrap();
        assert_eq!(up.elements().next().unwrap().coords(), &[1, 0, 0]);
        assert_eq!(embed_group(&up).unwrap(), e1.embed(3, 2).unwrap());
        assert!(embed_group(&ConnectionSet::empty(&FiniteAbelianGroup::new(&[2, 3]).unwrap())).is_err());
    }

    #[test]
    fn witness_pipelines() {
        let l = Limits::default();
        let s = spiga_connection_set();
        let w = build_non_ci_witness(3, 8, &s, WitnessMode::RPlus2, &l).unwrap();
        assert_eq!(w.hat.as_ref().unwrap().vertex_count(), 59049);
        let w = build_non_ci_witness(3, 8, &s, WitnessMode::RPlus3, &l).unwrap();
        assert_eq!(w.hat.as_ref().unwrap().vertex_count(), 177_147);
        assert_eq!(w.tricks.len(), 1);
        let g = FiniteAbelianGroup::elementary(3, 2).unwrap();
        let nine = ConnectionSet::whole(&g);
        let w = build_non_ci_witness(3, 2, &nine, WitnessMode::RPlus2, &l).unwrap();
        assert!(w.hat.is_none() && w.rejection.is_some());
        assert!(build_non_ci_witness(2, 3, &ConnectionSet::empty(&FiniteAbelianGroup::elementary(2, 3).unwrap()), WitnessMode::RPlus2, &l).is_err());
        // p = 5: a large set goes through the complement
        let g = FiniteAbelianGroup::elementary(5, 2).unwrap();
        let s = ConnectionSet::from_indices(&g, (1..20).filter(|&i| i != 5)).unwrap();
        let w = build_non_ci_witness(5, 2, &s, WitnessMode::RPlus2, &l).unwrap();
        assert!(w.tricks.iter().any(|t| t.starts_with("complement")));
    }

    #[test]
    fn lifting() {
        let g = z(5);
        let h = build_hat(&g, &set(&g, &[0, 1]), 3).unwrap();
        let id = lift_automorphism(&Permutation::identity(5), 0, 0, &h).unwrap();
        assert!(id.is_identity());
        let t = Permutation::from_usize(&(0..5).map(|x| (x + 2) % 5).collect::<Vec<_>>()).unwrap();
        let lifted = lift_automorphism(&t, 0, 0, &h).unwrap();
        let shift = h.join(2, 0, 0);
        assert!((0..h.vertex_count()).all(|x| lifted.apply(x) == h.hat_group().add_idx(x, shift)));
        let bad = Permutation::from_usize(&[1, 0, 2, 3, 4]).unwrap();
        assert!(lift_automorphism(&bad, 0, 0, &h).is_err());
        // homomorphism property
        let p2 = Permutation::from_usize(&(0..5).map(|x| (x + 3) % 5).collect::<Vec<_>>()).unwrap();
        let l1 = lift_automorphism(&t, 1, 2, &h).unwrap();
        let l2 = lift_automorphism(&p2, 2, 2, &h).unwrap();
        assert_eq!(l1.then(&l2), lift_automorphism(&t.then(&p2), 0, 1, &h).unwrap());
    }

    #[test]
    fn coset_helpers() {
        let g = z(5);
        let h = build_hat(&g, &set(&g, &[0, 1]), 4).unwrap();
        assert_eq!(h.g_coset(0).len(), 5);
        assert_eq!(h.ab_clique(0).len(), 8);
        let h3 = build_hat(&g, &set(&g, &[0, 1]), 3).unwrap();
        assert_eq!(h3.ab_clique(h3.join(2, 1, 1)).len(), 9);
        assert_eq!(h.split(h.join(3, 2, 1)), (3, 2, 1));
        assert_eq!(h.metadata().hat_moduli, vec![5, 4, 4]);
    }
}
