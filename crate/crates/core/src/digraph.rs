//! Dense bitset digraphs on vertices `0..n`.
//!
//! An undirected graph is a symmetric digraph with the `undirected` flag set;
//! loops live on the diagonal.

use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<BitSet>,
    inn: Vec<BitSet>,
    undirected: bool,
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Digraph")
            .field("order", &self.order())
            .field("undirected", &self.undirected)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Digraph { out: vec![BitSet::new(n); n], inn: vec![BitSet::new(n); n], undirected: false }
    }

    /// Directed edges `u -> v`.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Digraph::empty(n);
        for (u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    /// Undirected edges `u - v`; each is stored in both directions.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Digraph::empty(n);
        for (u, v) in edges {
            g.add_arc(u, v)?;
            g.add_arc(v, u)?;
        }
        g.undirected = true;
        Ok(g)
    }

    pub fn from_out_rows(out: Vec<BitSet>) -> Self {
        let n = out.len();
        let mut inn = vec![BitSet::new(n); n];
        for (u, row) in out.iter().enumerate() {
            for v in row.iter() {
                inn[v].insert(u);
            }
        }
        Digraph { out, inn, undirected: false }
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.order() });
        }
        Ok(())
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        self.check(u)?;
        self.check(v)?;
        self.out[u].insert(v);
        self.inn[v].insert(u);
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.out.len()
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    pub fn is_symmetric(&self) -> bool {
        self.out == self.inn
    }

    /// Flags a symmetric digraph as undirected.
    pub fn into_undirected(mut self) -> Result<Self> {
        if !self.is_symmetric() {
            return Err(Error::AsymmetricSet);
        }
        self.undirected = true;
        Ok(self)
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.out[v].contains(v)
    }

    pub fn out_row(&self, v: usize) -> &BitSet {
        &self.out[v]
    }

    pub fn in_row(&self, v: usize) -> &BitSet {
        &self.inn[v]
    }

    pub fn out_neighbours(&self, v: usize) -> Result<Vec<usize>> {
        self.check(v)?;
        Ok(self.out[v].iter().collect())
    }

    pub fn in_neighbours(&self, v: usize) -> Result<Vec<usize>> {
        self.check(v)?;
        Ok(self.inn[v].iter().collect())
    }

    /// Out-degree, loops included.
    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].count()
    }

    /// Arcs `(u, v)` in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.order()).flat_map(|u| self.out[u].iter().map(move |v| (u, v))).collect()
    }

    /// For undirected graphs, each edge once with `u <= v`; otherwise all arcs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        if self.undirected {
            self.arcs().into_iter().filter(|&(u, v)| u <= v).collect()
        } else {
            self.arcs()
        }
    }

    pub fn reverse(&self) -> Digraph {
        Digraph { out: self.inn.clone(), inn: self.out.clone(), undirected: self.undirected }
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Digraph> {
        let n = self.order();
        check_bijection(perm, n)?;
        let mut out = vec![BitSet::new(n); n];
        for u in 0..n {
            for v in self.out[u].iter() {
                out[perm[u]].insert(perm[v]);
            }
        }
        let mut g = Digraph::from_out_rows(out);
        g.undirected = self.undirected;
        Ok(g)
    }

    /// True iff `perm` maps this graph onto `other` arc-for-arc.
    pub fn is_isomorphism(&self, other: &Digraph, perm: &[usize]) -> bool {
        let n = self.order();
        if other.order() != n || check_bijection(perm, n).is_err() {
            return false;
        }
        (0..n).all(|u| {
            self.out[u].count() == other.out[perm[u]].count()
                && self.out[u].iter().all(|v| other.out[perm[u]].contains(perm[v]))
        })
    }

    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        self.is_isomorphism(self, perm)
    }

    /// Row-major adjacency matrix bits of the graph listed in `order`
    /// (position `i` holds vertex `order[i]`).
    pub fn adjacency_bytes_in_order(&self, order: &[usize]) -> Vec<u8> {
        let n = self.order();
        let mut bytes = vec![0u8; (n * n).div_ceil(8)];
        let mut pos = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        for (i, &u) in order.iter().enumerate() {
            for v in self.out[u].iter() {
                let bit = i * n + pos[v];
                bytes[bit >> 3] |= 1 << (bit & 7);
            }
        }
        bytes
    }

    /// Bipartite double cover: vertices `(x, i)` numbered `i * n + x`, with
    /// `(x, 0) - (y, 1)` whenever `x -> y`.
    pub fn bipartite_double_cover(&self) -> Digraph {
        let n = self.order();
        let mut edges = Vec::new();
        for (x, y) in self.arcs() {
            edges.push((x, n + y));
        }
        Digraph::from_edges(2 * n, edges).expect("indices in range")
    }

    /// Vertex set is a clique of distinct, mutually adjacent vertices
    /// (loops ignored).
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..].iter().all(|&v| u != v && self.has_arc(u, v) && self.has_arc(v, u))
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        let mut seen = BitSet::new(n);
        let mut stack = vec![0];
        seen.insert(0);
        while let Some(u) = stack.pop() {
            for v in self.out[u].iter().chain(self.inn[u].iter()) {
                if !seen.contains(v) {
                    seen.insert(v);
                    stack.push(v);
                }
            }
        }
        seen.count() == n
    }
}

pub(crate) fn check_bijection(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::NotAPermutation(format!("{} images for {n} points", perm.len())));
    }
    let mut seen = vec![false; n];
    for &x in perm {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(Error::NotAPermutation(format!("image {x} repeated or out of range")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn directed_cycle(n: usize) -> Digraph {
        Digraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn double_cover_of_directed_triangle() {
        // Without loops each vertex has a single out-neighbour: a matching.
        let dc = directed_cycle(3).bipartite_double_cover();
        assert_eq!(dc.edges(), vec![(0, 4), (1, 5), (2, 3)]);
        // With loops the cover is a hexagon.
        let looped = Digraph::from_arcs(3, (0..3).flat_map(|i| [(i, i), (i, (i + 1) % 3)])).unwrap();
        let dc = looped.bipartite_double_cover();
        assert_eq!(dc.order(), 6);
        assert!(dc.is_undirected());
        assert!((0..6).all(|v| dc.out_degree(v) == 2));
        assert!(dc.is_connected());
        assert!(dc.edges().iter().all(|&(u, v)| (u < 3) != (v < 3)));
    }

    #[test]
    fn double_cover_lifts_exactly_the_automorphisms() {
        let g = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 0), (3, 3), (0, 3)]).unwrap();
        let dc = g.bipartite_double_cover();
        let mut perm = vec![0, 1, 2, 3];
        permutations(&mut perm, 0, &mut |p| {
            let lifted: Vec<usize> = (0..8).map(|v| (v / 4) * 4 + p[v % 4]).collect();
            assert_eq!(g.is_automorphism(p), dc.is_automorphism(&lifted));
        });
    }

    fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permutations(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn double_cover_of_loops_is_matching() {
        let g = Digraph::from_arcs(4, (0..4).map(|i| (i, i))).unwrap();
        let dc = g.bipartite_double_cover();
        assert_eq!(dc.edges(), vec![(0, 4), (1, 5), (2, 6), (3, 7)]);
    }

    #[test]
    fn relabel_and_isomorphism() {
        let c = directed_cycle(4);
        let perm = [2, 3, 0, 1];
        assert!(c.is_automorphism(&perm));
        assert!(!c.is_automorphism(&[1, 0, 2, 3]));
        assert!(c.is_isomorphism(&c.reverse(), &[0, 3, 2, 1]));
        assert_eq!(c.relabel(&perm).unwrap(), c);
        assert!(c.relabel(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn undirected_flag_requires_symmetry() {
        assert!(directed_cycle(4).into_undirected().is_err());
        let g = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap().into_undirected().unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
    }
}
