//! Canonical labeling, isomorphism and automorphism groups of small digraphs.
//!
//! Partitions are refined to equitable form using paired out/in colour
//! counts and then individualized vertex by vertex. The automorphism group is
//! found first by searching for leaves equivalent to the first leaf, level by
//! level from the bottom of the first path. The canonical form is then the
//! least leaf certificate, exploring one child per orbit of the automorphisms
//! fixing the current node.

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::{Permutation, PermutationGroup};

/// An ordered partition of the vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredPartition {
    /// Cell index of every vertex.
    pub colours: Vec<usize>,
    /// Cells in order, each sorted.
    pub cells: Vec<Vec<usize>>,
}

impl ColouredPartition {
    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }
}

/// Canonical relabeling and the adjacency bytes it produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// `labeling[v]` is the canonical position of vertex `v`.
    pub labeling: Vec<usize>,
    /// Vertex count (4 bytes, little endian) followed by the row-major
    /// adjacency bits of the relabeled graph.
    pub bytes: Vec<u8>,
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

#[derive(Clone, Copy)]
struct Hasher(u64);

impl Hasher {
    fn new() -> Self {
        Hasher(FNV_OFFSET)
    }

    fn word(&mut self, x: u64) {
        for b in x.to_le_bytes() {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(FNV_PRIME);
        }
    }
}

#[derive(Clone)]
struct Node {
    cells: Vec<Vec<usize>>,
    trace: u64,
}

impl Node {
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, c) in self.cells.iter().enumerate() {
            if c.len() > 1 && best.is_none_or(|b| c.len() < self.cells[b].len()) {
                best = Some(i);
            }
        }
        best
    }

    fn order(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c[0]).collect()
    }
}

type Signature = Vec<(u32, u32, u32)>;

/// Refines `cells` to the coarsest equitable ordered partition below it.
/// Returns the refined cells and a hash of the refinement trace.
fn refine(g: &Digraph, mut cells: Vec<Vec<usize>>, seed: u64) -> (Vec<Vec<usize>>, u64) {
    let n = g.order();
    let mut h = Hasher(seed);
    let mut cell_of = vec![0usize; n];
    let mut out_count = vec![0u32; n];
    let mut in_count = vec![0u32; n];
    let mut touched = Vec::new();
    loop {
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let mut next = Vec::with_capacity(cells.len());
        let mut changed = false;
        for (ci, cell) in cells.iter().enumerate() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Signature, usize)> = cell
                .iter()
                .map(|&v| {
                    for u in g.out_row(v).iter() {
                        let c = cell_of[u];
                        if out_count[c] == 0 && in_count[c] == 0 {
                            touched.push(c);
                        }
                        out_count[c] += 1;
                    }
                    for u in g.in_row(v).iter() {
                        let c = cell_of[u];
                        if out_count[c] == 0 && in_count[c] == 0 {
                            touched.push(c);
                        }
                        in_count[c] += 1;
                    }
                    touched.sort_unstable();
                    let sig: Signature =
                        touched.iter().map(|&c| (c as u32, out_count[c], in_count[c])).collect();
                    for &c in &touched {
                        out_count[c] = 0;
                        in_count[c] = 0;
                    }
                    touched.clear();
                    (sig, v)
                })
                .collect();
            keyed.sort_unstable();
            let before = next.len();
            let mut start = 0;
            while start < keyed.len() {
                let mut end = start + 1;
                while end < keyed.len() && keyed[end].0 == keyed[start].0 {
                    end += 1;
                }
                h.word(ci as u64);
                h.word((end - start) as u64);
                for &(c, o, i) in &keyed[start].0 {
                    h.word(((c as u64) << 40) ^ ((o as u64) << 20) ^ i as u64);
                }
                let mut run: Vec<usize> = keyed[start..end].iter().map(|&(_, v)| v).collect();
                run.sort_unstable();
                next.push(run);
                start = end;
            }
            changed |= next.len() - before > 1;
        }
        h.word(u64::MAX);
        cells = next;
        if !changed {
            return (cells, h.0);
        }
    }
}

fn cells_from_colours(colours: &[usize]) -> Vec<Vec<usize>> {
    let mut keys: Vec<usize> = colours.to_vec();
    keys.sort_unstable();
    keys.dedup();
    let mut cells = vec![Vec::new(); keys.len()];
    for (v, c) in colours.iter().enumerate() {
        cells[keys.binary_search(c).unwrap()].push(v);
    }
    cells
}

/// Coarsest equitable refinement of the partition given by `colours`
/// (cells ordered by colour value).
pub fn colour_refinement(g: &Digraph, colours: &[usize]) -> Result<ColouredPartition> {
    if colours.len() != g.order() {
        return Err(Error::DegreeMismatch(g.order(), colours.len()));
    }
    let (cells, _) = refine(g, cells_from_colours(colours), FNV_OFFSET);
    let mut out = vec![0; g.order()];
    for (i, c) in cells.iter().enumerate() {
        for &v in c {
            out[v] = i;
        }
    }
    Ok(ColouredPartition { colours: out, cells })
}

fn individualize(g: &Digraph, node: &Node, cell: usize, w: usize) -> Node {
    let mut cells = Vec::with_capacity(node.cells.len() + 1);
    cells.extend_from_slice(&node.cells[..cell]);
    cells.push(vec![w]);
    cells.push(node.cells[cell].iter().copied().filter(|&x| x != w).collect());
    cells.extend_from_slice(&node.cells[cell + 1..]);
    let mut h = Hasher::new();
    h.word(cell as u64);
    let (cells, trace) = refine(g, cells, h.0);
    Node { cells, trace }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }

    fn add_permutation(&mut self, p: &Permutation) {
        for x in 0..p.degree() {
            self.union(x, p.apply(x));
        }
    }
}

struct Searcher<'a> {
    g: &'a Digraph,
}

impl Searcher<'_> {
    fn root(&self, colours: Option<&[usize]>) -> Node {
        let n = self.g.order();
        let cells = match colours {
            Some(c) => cells_from_colours(c),
            None if n == 0 => Vec::new(),
            None => vec![(0..n).collect()],
        };
        let (cells, trace) = refine(self.g, cells, FNV_OFFSET);
        Node { cells, trace }
    }

    /// Generators of the automorphism group (of the coloured graph).
    fn automorphisms(&self, root: Node) -> Vec<Permutation> {
        let mut path = vec![root];
        while let Some(tc) = path.last().unwrap().target_cell() {
            let node = path.last().unwrap();
            let w = node.cells[tc][0];
            let child = individualize(self.g, node, tc, w);
            path.push(child);
        }
        let leaf = path.last().unwrap().order();
        let bytes = self.g.adjacency_bytes_in_order(&leaf);
        let traces: Vec<u64> = path.iter().map(|n| n.trace).collect();
        let n = self.g.order();
        let mut gens = Vec::new();
        let mut uf = UnionFind::new(n);
        for d in (0..path.len().saturating_sub(1)).rev() {
            let node = &path[d];
            let tc = node.target_cell().unwrap();
            let first = node.cells[tc][0];
            let mut failed: Vec<usize> = Vec::new();
            for &w in &node.cells[tc][1..] {
                let root_w = uf.find(w);
                if root_w == uf.find(first) || failed.iter().any(|&f| uf.find(f) == root_w) {
                    continue;
                }
                let child = individualize(self.g, node, tc, w);
                let found =
                    if child.trace == traces[d + 1] { self.equivalent_leaf(&child, d + 1, &traces, &bytes) } else { None };
                match found {
                    Some(other) => {
                        let mut images = vec![0u32; n];
                        for (i, &v) in leaf.iter().enumerate() {
                            images[v] = other[i] as u32;
                        }
                        let gamma = Permutation::new(images).expect("leaf orders are bijections");
                        debug_assert!(self.g.is_automorphism(&gamma.to_usize()));
                        uf.add_permutation(&gamma);
                        gens.push(gamma);
                    }
                    None => failed.push(w),
                }
            }
        }
        gens
    }

    /// Searches below `node` for a leaf whose path traces and adjacency bytes
    /// match the first leaf.
    fn equivalent_leaf(&self, node: &Node, depth: usize, traces: &[u64], bytes: &[u8]) -> Option<Vec<usize>> {
        let Some(tc) = node.target_cell() else {
            if depth + 1 != traces.len() {
                return None;
            }
            let order = node.order();
            return (self.g.adjacency_bytes_in_order(&order) == bytes).then_some(order);
        };
        if depth + 1 >= traces.len() {
            return None;
        }
        for &w in &node.cells[tc] {
            let child = individualize(self.g, node, tc, w);
            if child.trace != traces[depth + 1] {
                continue;
            }
            if let Some(found) = self.equivalent_leaf(&child, depth + 1, traces, bytes) {
                return Some(found);
            }
        }
        None
    }

    fn canonical(&self, node: Node, group: &PermutationGroup) -> (Vec<u64>, Vec<u8>, Vec<usize>) {
        let mut best = None;
        let mut traces = vec![node.trace];
        self.canon_search(&node, group, &mut traces, &mut best);
        best.unwrap()
    }

    fn canon_search(
        &self,
        node: &Node,
        group: &PermutationGroup,
        traces: &mut Vec<u64>,
        best: &mut Option<(Vec<u64>, Vec<u8>, Vec<usize>)>,
    ) {
        if let Some((bt, _, _)) = best {
            let k = traces.len().min(bt.len());
            if traces[..k] > bt[..k] {
                return;
            }
        }
        let Some(tc) = node.target_cell() else {
            let order = node.order();
            let bytes = self.g.adjacency_bytes_in_order(&order);
            let better = match best {
                None => true,
                Some((bt, bb, _)) => (traces.as_slice(), bytes.as_slice()) < (bt.as_slice(), bb.as_slice()),
            };
            if better {
                *best = Some((traces.clone(), bytes, order));
            }
            return;
        };
        let mut uf = UnionFind::new(self.g.order());
        for p in group.generators() {
            uf.add_permutation(p);
        }
        let mut seen = Vec::new();
        for &w in &node.cells[tc] {
            let r = uf.find(w);
            if seen.contains(&r) {
                continue;
            }
            seen.push(r);
            let child = individualize(self.g, node, tc, w);
            let stab = if group.generators().is_empty() { group.clone() } else { group.stabilizer(w) };
            traces.push(child.trace);
            self.canon_search(&child, &stab, traces, best);
            traces.pop();
        }
    }
}

fn check_cap(g: &Digraph, limits: &Limits) -> Result<()> {
    if g.order() > limits.canon_vertices {
        return Err(Error::infeasible("canonical labeling", limits.canon_vertices as u128, g.order() as u128));
    }
    Ok(())
}

fn form_from_order(g: &Digraph, order: Vec<usize>, bits: Vec<u8>) -> CanonicalForm {
    let mut labeling = vec![0; g.order()];
    for (i, &v) in order.iter().enumerate() {
        labeling[v] = i;
    }
    let mut bytes = (g.order() as u32).to_le_bytes().to_vec();
    bytes.extend(bits);
    CanonicalForm { labeling, bytes }
}

/// Canonical form together with the automorphism group found on the way.
pub fn canonical_form_and_group(g: &Digraph, limits: &Limits) -> Result<(CanonicalForm, PermutationGroup)> {
    canonical_coloured(g, None, limits)
}

/// Canonical form of a vertex-coloured digraph; isomorphisms must preserve
/// colour values.
pub fn canonical_coloured(
    g: &Digraph,
    colours: Option<&[usize]>,
    limits: &Limits,
) -> Result<(CanonicalForm, PermutationGroup)> {
    check_cap(g, limits)?;
    if let Some(c) = colours {
        if c.len() != g.order() {
            return Err(Error::DegreeMismatch(g.order(), c.len()));
        }
    }
    let s = Searcher { g };
    let root = s.root(colours);
    let gens = s.automorphisms(root.clone());
    let group = PermutationGroup::new(g.order(), gens)?;
    let (_, bits, order) = s.canonical(root, &group);
    let mut form = form_from_order(g, order, bits);
    if let Some(c) = colours {
        // Colour values are part of the certificate.
        let mut by_pos = vec![0usize; g.order()];
        for (v, &p) in form.labeling.iter().enumerate() {
            by_pos[p] = c[v];
        }
        for x in by_pos {
            form.bytes.extend((x as u64).to_le_bytes());
        }
    }
    Ok((form, group))
}

pub fn canonical_form(g: &Digraph, limits: &Limits) -> Result<CanonicalForm> {
    Ok(canonical_form_and_group(g, limits)?.0)
}

/// An isomorphism `x`-vertex `v` ↦ `y`-vertex `perm[v]`, verified arc by arc.
pub fn are_isomorphic(x: &Digraph, y: &Digraph, limits: &Limits) -> Result<Option<Permutation>> {
    if x.order() != y.order() {
        return Ok(None);
    }
    let mut dx: Vec<(usize, usize)> = (0..x.order()).map(|v| (x.out_degree(v), x.in_degree(v))).collect();
    let mut dy: Vec<(usize, usize)> = (0..y.order()).map(|v| (y.out_degree(v), y.in_degree(v))).collect();
    dx.sort_unstable();
    dy.sort_unstable();
    if dx != dy {
        return Ok(None);
    }
    let cx = canonical_form(x, limits)?;
    let cy = canonical_form(y, limits)?;
    if cx.bytes != cy.bytes {
        return Ok(None);
    }
    let mut inv_y = vec![0; y.order()];
    for (v, &p) in cy.labeling.iter().enumerate() {
        inv_y[p] = v;
    }
    let perm: Vec<usize> = cx.labeling.iter().map(|&p| inv_y[p]).collect();
    if !x.is_isomorphism(y, &perm) {
        return Err(Error::Precondition("canonical labelings disagree with adjacency".into()));
    }
    Ok(Some(Permutation::from_usize(&perm)?))
}

pub fn automorphism_group(g: &Digraph, limits: &Limits) -> Result<PermutationGroup> {
    check_cap(g, limits)?;
    let s = Searcher { g };
    let root = s.root(None);
    PermutationGroup::new(g.order(), s.automorphisms(root))
}

/// Automorphisms fixing `v`.
pub fn point_stabilizer_automorphisms(g: &Digraph, v: usize, limits: &Limits) -> Result<PermutationGroup> {
    if v >= g.order() {
        return Err(Error::VertexOutOfRange { vertex: v, order: g.order() });
    }
    Ok(automorphism_group(g, limits)?.stabilizer(v))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::cayley::CayleyDigraph;
    use crate::group::{ConnectionSet, FiniteAbelianGroup};

    fn l() -> Limits {
        Limits::default()
    }

    fn cay(moduli: &[u32], set: &[&[u64]]) -> Digraph {
        let g = FiniteAbelianGroup::new(moduli).unwrap();
        let elems: Vec<_> = set.iter().map(|c| g.element(c).unwrap()).collect();
        CayleyDigraph::new(&g, &ConnectionSet::from_elements(&g, &elems).unwrap()).unwrap().to_digraph(&l()).unwrap()
    }

    fn cycle(n: usize) -> Digraph {
        Digraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn dicycle(n: usize) -> Digraph {
        Digraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(n: usize) -> Digraph {
        Digraph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn complete(n: usize) -> Digraph {
        Digraph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        fn go(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
            if k == v.len() {
                out.push(v.clone());
                return;
            }
            for i in k..v.len() {
                v.swap(k, i);
                go(v, k + 1, out);
                v.swap(k, i);
            }
        }
        let mut out = Vec::new();
        go(&mut (0..n).collect(), 0, &mut out);
        out
    }

    fn random_digraph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Digraph {
        let arcs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
        Digraph::from_arcs(n, arcs).unwrap()
    }

    #[test]
    fn refinement_examples() {
        let c = colour_refinement(&cycle(6), &[0; 6]).unwrap();
        assert_eq!(c.cells.len(), 1);
        let p = colour_refinement(&path(3), &[0; 3]).unwrap();
        assert_eq!(p.cells.len(), 2);
        assert_eq!(p.colours[0], p.colours[2]);
        assert_ne!(p.colours[0], p.colours[1]);
        let d = colour_refinement(&dicycle(4), &[1, 0, 0, 0]).unwrap();
        assert!(d.is_discrete());
        let again = colour_refinement(&dicycle(4), &d.colours).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_form(&cay(&[4], &[&[1]]), &l()).unwrap().bytes, canonical_form(&cay(&[4], &[&[3]]), &l()).unwrap().bytes);
        assert_ne!(canonical_form(&cycle(4), &l()).unwrap().bytes, canonical_form(&path(4), &l()).unwrap().bytes);
        let tournaments: Vec<Digraph> = (0..8u32)
            .map(|m| {
                let pairs = [(0, 1), (0, 2), (1, 2)];
                let arcs = pairs.iter().enumerate().map(|(i, &(a, b))| if m >> i & 1 == 1 { (a, b) } else { (b, a) });
                Digraph::from_arcs(3, arcs).unwrap()
            })
            .collect();
        let classes: BTreeSet<Vec<u8>> = tournaments.iter().map(|t| canonical_form(t, &l()).unwrap().bytes).collect();
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn relabeled_graph_reproduces_bytes() {
        let g = cay(&[6], &[&[1], &[2]]);
        let f = canonical_form(&g, &l()).unwrap();
        let relabeled = g.relabel(&f.labeling).unwrap();
        let id: Vec<usize> = (0..6).collect();
        assert_eq!(&f.bytes[4..], relabeled.adjacency_bytes_in_order(&id).as_slice());
    }

    #[test]
    fn isomorphism_examples() {
        let x = cay(&[5], &[&[1]]);
        let w = are_isomorphic(&x, &x.reverse(), &l()).unwrap().unwrap();
        assert!(x.is_isomorphism(&x.reverse(), &w.to_usize()));
        assert!(are_isomorphic(&cay(&[6], &[&[1]]), &cay(&[6], &[&[1], &[3]]), &l()).unwrap().is_none());
        let a = cay(&[2, 2], &[&[1, 0]]);
        let b = cay(&[4], &[&[2]]);
        let w = are_isomorphic(&a, &b, &l()).unwrap().unwrap();
        assert!(a.is_isomorphism(&b, &w.to_usize()));
        assert!(are_isomorphic(&cycle(3), &cycle(4), &l()).unwrap().is_none());
    }

    #[test]
    fn automorphism_group_examples() {
        for n in 3..8 {
            assert_eq!(automorphism_group(&dicycle(n), &l()).unwrap().order(), BigUint::from(n));
            assert_eq!(point_stabilizer_automorphisms(&dicycle(n), 1, &l()).unwrap().order(), BigUint::from(1u32));
        }
        assert_eq!(automorphism_group(&cycle(4), &l()).unwrap().order(), BigUint::from(8u32));
        assert_eq!(point_stabilizer_automorphisms(&cycle(4), 3, &l()).unwrap().order(), BigUint::from(2u32));
        assert_eq!(point_stabilizer_automorphisms(&complete(4), 0, &l()).unwrap().order(), BigUint::from(6u32));
        assert_eq!(automorphism_group(&cay(&[5], &[&[0], &[1]]), &l()).unwrap().order(), BigUint::from(5u32));
        assert_eq!(automorphism_group(&complete(9), &l()).unwrap().order(), BigUint::from(362_880u32));
        assert_eq!(automorphism_group(&Digraph::empty(7), &l()).unwrap().order(), BigUint::from(5040u32));
        // Petersen graph: order 120.
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let petersen = Digraph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap();
        assert_eq!(automorphism_group(&petersen, &l()).unwrap().order(), BigUint::from(120u32));
    }

    #[test]
    fn cap_is_enforced() {
        let limits = Limits { canon_vertices: 5, ..Limits::default() };
        assert!(canonical_form(&cycle(6), &limits).unwrap_err().is_infeasible());
    }

    #[test]
    fn brute_force_agreement_on_random_digraphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for trial in 0..150 {
            let n = 1 + trial % 6;
            let p = [0.2, 0.5, 0.7][trial % 3];
            let x = random_digraph(&mut rng, n, p);
            // half the time compare against a relabeled copy
            let y = if rng.gen_bool(0.5) {
                let mut perm: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    perm.swap(i, rng.gen_range(0..=i));
                }
                x.relabel(&perm).unwrap()
            } else {
                random_digraph(&mut rng, n, p)
            };
            let perms = all_perms(n);
            let brute_iso = perms.iter().any(|p| x.is_isomorphism(&y, p));
            let same = canonical_form(&x, &l()).unwrap().bytes == canonical_form(&y, &l()).unwrap().bytes;
            assert_eq!(brute_iso, same, "trial {trial}");
            let w = are_isomorphic(&x, &y, &l()).unwrap();
            assert_eq!(w.is_some(), brute_iso);
            let brute_aut = perms.iter().filter(|p| x.is_automorphism(p)).count();
            let aut = automorphism_group(&x, &l()).unwrap();
            assert_eq!(aut.order(), BigUint::from(brute_aut), "trial {trial}");
            assert!(aut.generators().iter().all(|g| x.is_automorphism(&g.to_usize())));
        }
    }

    #[test]
    fn seven_vertex_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let perms = all_perms(7);
        for _ in 0..6 {
            let x = random_digraph(&mut rng, 7, 0.4);
            let y = random_digraph(&mut rng, 7, 0.4);
            let brute = perms.iter().any(|p| x.is_isomorphism(&y, p));
            assert_eq!(brute, are_isomorphic(&x, &y, &l()).unwrap().is_some());
            let brute_aut = perms.iter().filter(|p| x.is_automorphism(p)).count();
            assert_eq!(automorphism_group(&x, &l()).unwrap().order(), BigUint::from(brute_aut));
        }
    }

    #[test]
    fn order_is_stable_under_relabeling() {
        let g = cay(&[2, 4], &[&[1, 0], &[0, 1], &[0, 3]]);
        let base = automorphism_group(&g, &l()).unwrap().order();
        let h = g.relabel(&[7, 6, 5, 4, 3, 2, 1, 0]).unwrap();
        assert_eq!(automorphism_group(&h, &l()).unwrap().order(), base);
    }

    #[test]
    fn coloured_canonical_forms() {
        let g = cycle(4);
        let (a, _) = canonical_coloured(&g, Some(&[1, 0, 0, 0]), &l()).unwrap();
        let (b, _) = canonical_coloured(&g, Some(&[0, 0, 1, 0]), &l()).unwrap();
        let (c, _) = canonical_coloured(&g, Some(&[2, 0, 0, 0]), &l()).unwrap();
        assert_eq!(a.bytes, b.bytes);
        assert_ne!(a.bytes, c.bytes);
    }
}
