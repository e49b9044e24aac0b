use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::cayley::CayleyDigraph;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::hat::HatConstruction;
use crate::limits::Limits;

/// Maximal cliques of an undirected graph (loops ignored), each sorted, the
/// list sorted. Fails once `budget` recursion nodes have been used.
pub fn maximal_cliques(g: &Digraph, budget: u64) -> Result<Vec<Vec<usize>>> {
    if !g.is_undirected() && !g.is_symmetric() {
        return Err(Error::AsymmetricSet);
    }
    let n = g.order();
    let adj: Vec<BitSet> = (0..n)
        .map(|v| {
            let mut row = g.out_row(v).clone();
            row.remove(v);
            row
        })
        .collect();
    let mut out = Vec::new();
    let mut nodes = 0u64;
    let mut r = Vec::new();
    bron_kerbosch(&adj, &mut r, BitSet::full(n), BitSet::new(n), &mut out, &mut nodes, budget)?;
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn bron_kerbosch(
    adj: &[BitSet],
    r: &mut Vec<usize>,
    mut p: BitSet,
    mut x: BitSet,
    out: &mut Vec<Vec<usize>>,
    nodes: &mut u64,
    budget: u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::infeasible("maximal clique recursion nodes", budget as u128, *nodes as u128));
    }
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            out.push(r.clone());
        }
        return Ok(());
    }
    let pivot = p.iter().chain(x.iter()).max_by_key(|&u| (p.intersection_count(&adj[u]), usize::MAX - u)).unwrap();
    let mut candidates = p.clone();
    candidates.difference_with(&adj[pivot]);
    for v in candidates.iter().collect::<Vec<_>>() {
        r.push(v);
        bron_kerbosch(adj, r, p.intersection(&adj[v]), x.intersection(&adj[v]), out, nodes, budget)?;
        r.pop();
        p.remove(v);
        x.insert(v);
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[allow(non_camel_case_types)]
pub enum CliqueKind {
    /// A coset `Gx`.
    A_COSET_G,
    /// `Ax ∪ Abx` (`n > 3`).
    B_PAIR,
    /// `ABx` (`n = 3`).
    B3_ABCOSET,
    /// Inside `Gx ∪ Gbx` without a full `G`-coset (`n > 3`).
    C_SUBSET,
    /// Inside `GBx` without a full `G`-coset (`n = 3`).
    C3_SUBSET,
    UNCLASSIFIED,
}

impl CliqueKind {
    pub fn name(self) -> &'static str {
        match self {
            CliqueKind::A_COSET_G => "A_COSET_G",
            CliqueKind::B_PAIR => "B_PAIR",
            CliqueKind::B3_ABCOSET => "B3_ABCOSET",
            CliqueKind::C_SUBSET => "C_SUBSET",
            CliqueKind::C3_SUBSET => "C3_SUBSET",
            CliqueKind::UNCLASSIFIED => "UNCLASSIFIED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueClassification {
    pub clique: Vec<usize>,
    pub kind: CliqueKind,
    /// A coset representative `x` (vertex index) for the matched shape.
    pub witness_x: Option<usize>,
}

fn is_clique_implicit(x: &CayleyDigraph, c: &[usize]) -> bool {
    c.iter().enumerate().all(|(i, &u)| c[i + 1..].iter().all(|&v| u != v && x.has_arc(u, v)))
}

/// Classifies a clique of `X̂` by its coordinates `(g, a, v)`.
pub fn classify_clique(clique: &[usize], hat: &HatConstruction) -> Result<CliqueClassification> {
    let x = hat.hat_graph();
    if let Some(&bad) = clique.iter().find(|&&v| v >= hat.vertex_count()) {
        return Err(Error::VertexOutOfRange { vertex: bad, order: hat.vertex_count() });
    }
    if clique.is_empty() || !is_clique_implicit(x, clique) {
        return Err(Error::Precondition("vertex set is not a clique".into()));
    }
    let mut sorted = clique.to_vec();
    sorted.sort_unstable();
    let n = hat.n() as usize;
    let g_order = hat.base_group().order();
    let coords: Vec<(usize, usize, usize)> = sorted.iter().map(|&v| hat.split(v)).collect();
    let (g0, a0, v0) = coords[0];
    let done = |kind, witness_x| Ok(CliqueClassification { clique: sorted.clone(), kind, witness_x });

    if sorted.len() == g_order && coords.iter().all(|&(_, a, v)| (a, v) == (a0, v0)) {
        return done(CliqueKind::A_COSET_G, Some(hat.join(0, a0, v0)));
    }

    let b_values: BTreeSet<usize> = coords.iter().map(|&(_, _, v)| v).collect();
    let av: BTreeSet<(usize, usize)> = coords.iter().map(|&(_, a, v)| (a, v)).collect();
    let same_g = coords.iter().all(|&(g, _, _)| g == g0);
    // lowest `v` of a pair {v, v+1}, if the `B`-values fit in one
    let pair_start = match b_values.iter().copied().collect::<Vec<_>>()[..] {
        [v] => Some(v),
        [p, q] if (p + 1) % n == q => Some(p),
        [p, q] if (q + 1) % n == p => Some(q),
        _ => None,
    };
    if n == 3 {
        if same_g && av.len() == 9 && sorted.len() == 9 {
            return done(CliqueKind::B3_ABCOSET, Some(hat.join(g0, 0, 0)));
        }
    } else if same_g && sorted.len() == 2 * n && b_values.len() == 2 {
        if let Some(p) = pair_start {
            return done(CliqueKind::B_PAIR, Some(hat.join(g0, 0, p)));
        }
    }

    let same_a = coords.iter().all(|&(_, a, _)| a == a0);
    let mut per_coset: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(_, a, v) in &coords {
        *per_coset.entry((a, v)).or_default() += 1;
    }
    let no_full_coset = per_coset.values().all(|&c| c < g_order);
    if same_a && no_full_coset {
        if n == 3 {
            return done(CliqueKind::C3_SUBSET, Some(hat.join(0, a0, 0)));
        }
        if let Some(p) = pair_start {
            return done(CliqueKind::C_SUBSET, Some(hat.join(0, a0, p)));
        }
    }
    done(CliqueKind::UNCLASSIFIED, None)
}

/// Vertices outside `c` adjacent to every vertex of `c`, found by scanning
/// all vertices.
pub fn clique_extensions(x: &CayleyDigraph, c: &[usize]) -> Vec<usize> {
    let mut inside = BitSet::new(x.order());
    for &v in c {
        inside.insert(v);
    }
    (0..x.order()).filter(|&y| !inside.contains(y) && c.iter().all(|&v| x.has_arc(y, v))).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CliqueMode {
    Full,
    Spot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub kind: CliqueKind,
    pub count: usize,
    pub min_size: usize,
    pub max_size: usize,
    pub example: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueReport {
    pub mode: CliqueMode,
    pub vertices: usize,
    pub n: u32,
    pub maximal_cliques: usize,
    pub census: Vec<CensusRow>,
    pub unclassified: Vec<Vec<usize>>,
    /// Type (a) sets checked for being maximal cliques, and how many were.
    pub type_a_checked: usize,
    pub type_a_maximal: usize,
    pub type_b_checked: usize,
    pub type_b_maximal: usize,
    /// Type (a) sets have `|G|` vertices and type (b) sets `nk`.
    pub sizes_ok: bool,
}

impl CliqueReport {
    pub fn passed(&self) -> bool {
        self.unclassified.is_empty()
            && self.type_a_checked > 0
            && self.type_b_checked > 0
            && self.type_a_maximal == self.type_a_checked
            && self.type_b_maximal == self.type_b_checked
            && self.sizes_ok
    }

    pub fn count(&self, kind: CliqueKind) -> usize {
        self.census.iter().find(|r| r.kind == kind).map_or(0, |r| r.count)
    }
}

/// Checks the maximal-clique classification of `X̂`.
///
/// Full mode enumerates every maximal clique, classifies it and checks that
/// every coset `Gx` and every `Ax ∪ Abx` (or `ABx`) is among them. Spot mode
/// only checks that `G` and the `AB`-set through the identity are cliques
/// with no extension.
pub fn verify_clique_lemma(hat: &HatConstruction, mode: CliqueMode, limits: &Limits) -> Result<CliqueReport> {
    let x = hat.hat_graph();
    let g_order = hat.base_group().order();
    let nk = (hat.n() * hat.k()) as usize;
    let n = hat.n() as usize;
    let mut report = CliqueReport {
        mode,
        vertices: hat.vertex_count(),
        n: hat.n(),
        maximal_cliques: 0,
        census: Vec::new(),
        unclassified: Vec::new(),
        type_a_checked: 0,
        type_a_maximal: 0,
        type_b_checked: 0,
        type_b_maximal: 0,
        sizes_ok: true,
    };
    match mode {
        CliqueMode::Spot => {
            let a = hat.g_coset(0);
            let b = hat.ab_clique(0);
            report.type_a_checked = 1;
            report.type_b_checked = 1;
            report.type_a_maximal = usize::from(is_clique_implicit(x, &a) && clique_extensions(x, &a).is_empty());
            report.type_b_maximal = usize::from(is_clique_implicit(x, &b) && clique_extensions(x, &b).is_empty());
            report.sizes_ok = a.len() == g_order && b.len() == nk;
        }
        CliqueMode::Full => {
            let dense = x.to_digraph(limits)?;
            let cliques = maximal_cliques(&dense, limits.clique_budget)?;
            report.maximal_cliques = cliques.len();
            let mut census: BTreeMap<CliqueKind, CensusRow> = BTreeMap::new();
            for c in &cliques {
                let cls = classify_clique(c, hat)?;
                let row = census.entry(cls.kind).or_insert_with(|| CensusRow {
                    kind: cls.kind,
                    count: 0,
                    min_size: usize::MAX,
                    max_size: 0,
                    example: c.clone(),
                });
                row.count += 1;
                row.min_size = row.min_size.min(c.len());
                row.max_size = row.max_size.max(c.len());
                if cls.kind == CliqueKind::UNCLASSIFIED {
                    report.unclassified.push(c.clone());
                }
            }
            report.census = census.into_values().collect();
            let all: BTreeSet<&Vec<usize>> = cliques.iter().collect();
            for a in 0..n {
                for v in 0..n {
                    let coset = hat.g_coset(hat.join(0, a, v));
                    report.type_a_checked += 1;
                    report.type_a_maximal += usize::from(all.contains(&coset));
                    report.sizes_ok &= coset.len() == g_order;
                }
            }
            let b_starts: Vec<usize> = if n == 3 { vec![0] } else { (0..n).collect() };
            for g in 0..g_order {
                for &v in &b_starts {
                    let set = hat.ab_clique(hat.join(g, 0, v));
                    report.type_b_checked += 1;
                    report.type_b_maximal += usize::from(all.contains(&set));
                    report.sizes_ok &= set.len() == nk;
                }
            }
        }
    }
    Ok(report)
}
