//! Cayley digraphs `Cay(G; S)` on finite abelian groups.
//!
//! Adjacency is answered from the connection-set mask (`g -> h` iff
//! `h - g ∈ S`), so even the 3^10-vertex hat graphs can be queried without
//! materializing rows. [`CayleyDigraph::to_digraph`] builds the dense bitset
//! form for the desk-scale algorithms.

use crate::bitset::BitSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::group::{ConnectionSet, FiniteAbelianGroup};
use crate::limits::Limits;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyDigraph {
    group: FiniteAbelianGroup,
    set: ConnectionSet,
    mask: BitSet,
    undirected: bool,
}

impl CayleyDigraph {
    pub fn new(group: &FiniteAbelianGroup, set: &ConnectionSet) -> Result<Self> {
        if set.group() != group {
            return Err(Error::GroupMismatch { expected: group.moduli().to_vec(), actual: set.group().moduli().to_vec() });
        }
        Ok(CayleyDigraph { group: group.clone(), mask: set.mask(), set: set.clone(), undirected: false })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn connection_set(&self) -> &ConnectionSet {
        &self.set
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn is_undirectable(&self) -> bool {
        self.set.is_symmetric()
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    /// `Cay(G; S^{-1})`: every arc reversed.
    pub fn reverse(&self) -> CayleyDigraph {
        let inv = self.set.inverse();
        CayleyDigraph { group: self.group.clone(), mask: inv.mask(), set: inv, undirected: self.undirected }
    }

    /// Views a symmetric Cayley digraph as an undirected Cayley graph.
    pub fn to_undirected(&self) -> Result<CayleyDigraph> {
        if !self.set.is_symmetric() {
            return Err(Error::AsymmetricSet);
        }
        Ok(CayleyDigraph { undirected: true, ..self.clone() })
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.mask.contains(self.group.sub_idx(v, u))
    }

    fn check(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            return Err(Error::VertexOutOfRange { vertex: v, order: self.order() });
        }
        Ok(())
    }

    /// `{s + v : s ∈ S}`, sorted.
    pub fn out_neighbours(&self, v: usize) -> Result<Vec<usize>> {
        self.check(v)?;
        let mut out: Vec<usize> = self.set.indices().iter().map(|&s| self.group.add_idx(s, v)).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// `{v - s : s ∈ S}`, sorted.
    pub fn in_neighbours(&self, v: usize) -> Result<Vec<usize>> {
        self.check(v)?;
        let mut inn: Vec<usize> = self.set.indices().iter().map(|&s| self.group.sub_idx(v, s)).collect();
        inn.sort_unstable();
        Ok(inn)
    }

    /// Valency excluding the loop contributed by `0 ∈ S`.
    pub fn loopless_degree(&self) -> usize {
        self.set.len() - usize::from(self.set.contains_identity())
    }

    /// Translation `x ↦ x + t`, always an automorphism.
    pub fn translation(&self, t: usize) -> Vec<usize> {
        (0..self.order()).map(|x| self.group.add_idx(x, t)).collect()
    }

    /// True iff `perm` preserves every arc, checked from the connection set
    /// without materializing rows.
    pub fn is_automorphism(&self, perm: &Permutation) -> bool {
        let n = self.order();
        perm.degree() == n
            && (0..n).all(|x| {
                let px = perm.apply(x);
                self.set.indices().iter().all(|&s| self.has_arc(px, perm.apply(self.group.add_idx(x, s))))
            })
    }

    /// Dense bitset adjacency in group-element order.
    pub fn to_digraph(&self, limits: &Limits) -> Result<Digraph> {
        let n = self.order();
        if n > limits.materialize_vertices {
            return Err(Error::infeasible("materialized Cayley digraph", limits.materialize_vertices as u128, n as u128));
        }
        let rows = (0..n)
            .map(|v| BitSet::from_indices(n, self.set.indices().iter().map(|&s| self.group.add_idx(s, v))))
            .collect();
        let g = Digraph::from_out_rows(rows);
        if self.undirected {
            g.into_undirected()
        } else {
            Ok(g)
        }
    }

    pub fn bipartite_double_cover(&self, limits: &Limits) -> Result<Digraph> {
        Ok(self.to_digraph(limits)?.bipartite_double_cover())
    }
}

/// `S ∪ {1_G}`: a loop at every vertex, which leaves the automorphism group
/// unchanged.
pub fn ensure_identity(set: &ConnectionSet) -> ConnectionSet {
    set.with_identity()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cay(moduli: &[u32], residues: &[&[u64]]) -> CayleyDigraph {
        let g = FiniteAbelianGroup::new(moduli).unwrap();
        let elems: Vec<_> = residues.iter().map(|c| g.element(c).unwrap()).collect();
        CayleyDigraph::new(&g, &ConnectionSet::from_elements(&g, &elems).unwrap()).unwrap()
    }

    #[test]
    fn build_examples() {
        let l = Limits::default();
        let c4 = cay(&[4], &[&[1]]).to_digraph(&l).unwrap();
        assert_eq!(c4.arcs(), vec![(0, 1), (1, 2), (2, 3), (3, 0)]);
        let empty = cay(&[4], &[]).to_digraph(&l).unwrap();
        assert!(empty.arcs().is_empty() && empty.order() == 4);
        let looped = cay(&[5], &[&[0], &[1]]).to_digraph(&l).unwrap();
        assert!((0..5).all(|v| looped.has_loop(v) && looped.has_arc(v, (v + 1) % 5)));
        assert_eq!(looped.arcs().len(), 10);
    }

    #[test]
    fn neighbours() {
        let x = cay(&[5], &[&[0], &[1]]);
        assert_eq!(x.out_neighbours(2).unwrap(), vec![2, 3]);
        assert_eq!(cay(&[5], &[]).out_neighbours(2).unwrap(), Vec::<usize>::new());
        assert_eq!(cay(&[4], &[&[1], &[2]]).out_neighbours(3).unwrap(), vec![0, 1]);
        assert_eq!(cay(&[4], &[&[1], &[2]]).in_neighbours(3).unwrap(), vec![1, 2]);
        assert!(x.out_neighbours(5).is_err());
    }

    #[test]
    fn reverse_examples() {
        let x = cay(&[4], &[&[1]]);
        assert_eq!(x.reverse(), cay(&[4], &[&[3]]));
        assert_eq!(x.reverse().reverse(), x);
        let sym = cay(&[5], &[&[1], &[4]]);
        assert_eq!(sym.reverse(), sym);
    }

    #[test]
    fn undirected_examples() {
        let l = Limits::default();
        let c4 = cay(&[4], &[&[1], &[3]]).to_undirected().unwrap().to_digraph(&l).unwrap();
        assert_eq!(c4.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        let m = cay(&[4], &[&[2]]).to_undirected().unwrap().to_digraph(&l).unwrap();
        assert_eq!(m.edges(), vec![(0, 2), (1, 3)]);
        assert_eq!(cay(&[4], &[&[1]]).to_undirected(), Err(Error::AsymmetricSet));
    }

    #[test]
    fn ensure_identity_examples() {
        let g = FiniteAbelianGroup::cyclic(5).unwrap();
        let s = ConnectionSet::from_residues(&g, &[1]).unwrap();
        assert_eq!(ensure_identity(&s), ConnectionSet::from_residues(&g, &[0, 1]).unwrap());
        let s0 = ConnectionSet::from_residues(&g, &[0, 3]).unwrap();
        assert_eq!(ensure_identity(&s0), s0);
    }

    #[test]
    fn double_cover_of_z2() {
        let l = Limits::default();
        // Cay(Z2, {1}) has arcs 0->1 and 1->0 only: its cover is two disjoint edges.
        let dc = cay(&[2], &[&[1]]).bipartite_double_cover(&l).unwrap();
        assert_eq!(dc.edges(), vec![(0, 3), (1, 2)]);
        // With loops the cover closes up into a 4-cycle.
        let dc = cay(&[2], &[&[0], &[1]]).bipartite_double_cover(&l).unwrap();
        assert_eq!(dc.edges().len(), 4);
        assert!(dc.is_connected() && (0..4).all(|v| dc.out_degree(v) == 2));
    }

    #[test]
    fn translations_are_automorphisms() {
        for (m, set) in [(6u32, vec![1u64, 2]), (7, vec![0, 1, 3]), (8, vec![])] {
            let g = FiniteAbelianGroup::cyclic(m).unwrap();
            let x = CayleyDigraph::new(&g, &ConnectionSet::from_residues(&g, &set).unwrap()).unwrap();
            let d = x.to_digraph(&Limits::default()).unwrap();
            for t in 0..g.order() {
                let p = Permutation::from_usize(&x.translation(t)).unwrap();
                assert!(x.is_automorphism(&p));
                assert!(d.is_automorphism(&x.translation(t)));
            }
        }
        let g = FiniteAbelianGroup::cyclic(5).unwrap();
        let x = CayleyDigraph::new(&g, &ConnectionSet::from_residues(&g, &[1]).unwrap()).unwrap();
        assert!(!x.is_automorphism(&Permutation::from_usize(&[0, 4, 3, 2, 1]).unwrap()));
    }

    #[test]
    fn materialization_cap() {
        let g = FiniteAbelianGroup::elementary(3, 10).unwrap();
        let x = CayleyDigraph::new(&g, &ConnectionSet::empty(&g)).unwrap();
        assert!(x.to_digraph(&Limits::default()).unwrap_err().is_infeasible());
    }

    #[test]
    fn mismatched_group_rejected() {
        let g = FiniteAbelianGroup::cyclic(4).unwrap();
        let h = FiniteAbelianGroup::cyclic(5).unwrap();
        assert!(CayleyDigraph::new(&g, &ConnectionSet::empty(&h)).is_err());
    }
}
