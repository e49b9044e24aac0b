use crate::bitset::BitSet;
use crate::error::{Error, Result};

use super::{FiniteAbelianGroup, GroupElement};

/// A subset of a finite abelian group, stored as sorted element indices.
///
/// Index order is lexicographic coordinate order, so iteration yields the
/// elements sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    group: FiniteAbelianGroup,
    indices: Vec<usize>,
    contains_identity: bool,
    is_symmetric: bool,
}

impl std::fmt::Debug for ConnectionSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConnectionSet")
            .field("group", &self.group)
            .field("elements", &self.elements().collect::<Vec<_>>())
            .finish()
    }
}

impl ConnectionSet {
    pub fn from_indices(group: &FiniteAbelianGroup, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        if let Some(&bad) = indices.iter().find(|&&i| i >= group.order()) {
            return Err(Error::VertexOutOfRange { vertex: bad, order: group.order() });
        }
        indices.sort_unstable();
        indices.dedup();
        Ok(Self::from_sorted(group.clone(), indices))
    }

    pub fn from_elements<'a>(
        group: &FiniteAbelianGroup,
        elements: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<Self> {
        let idx = elements.into_iter().map(|e| group.index_of(e)).collect::<Result<Vec<_>>>()?;
        Self::from_indices(group, idx)
    }

    /// Convenience for cyclic groups: `S` given as residues.
    pub fn from_residues(group: &FiniteAbelianGroup, residues: &[u64]) -> Result<Self> {
        let elems = residues.iter().map(|&r| group.element(&[r])).collect::<Result<Vec<_>>>()?;
        Self::from_elements(group, &elems)
    }

    pub fn empty(group: &FiniteAbelianGroup) -> Self {
        Self::from_sorted(group.clone(), Vec::new())
    }

    pub fn whole(group: &FiniteAbelianGroup) -> Self {
        Self::from_sorted(group.clone(), (0..group.order()).collect())
    }

    pub(crate) fn from_sorted(group: FiniteAbelianGroup, indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        let contains_identity = indices.first() == Some(&0);
        let is_symmetric = indices.iter().all(|&i| indices.binary_search(&group.neg_idx(i)).is_ok());
        ConnectionSet { group, indices, contains_identity, is_symmetric }
    }

    /// Builds a set from a membership mask over the group.
    pub fn from_mask(group: &FiniteAbelianGroup, mask: &BitSet) -> Result<Self> {
        if mask.len() != group.order() {
            return Err(Error::InvalidParameter(format!(
                "mask of length {} for group of order {}",
                mask.len(),
                group.order()
            )));
        }
        Ok(Self::from_sorted(group.clone(), mask.iter().collect()))
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_symmetric
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        self.indices.binary_search(&idx).is_ok()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.group.index_of(g).map(|i| self.contains_index(i)).unwrap_or(false)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.indices.iter().map(|&i| self.group.element_at(i))
    }

    pub fn mask(&self) -> BitSet {
        BitSet::from_indices(self.group.order(), self.indices.iter().copied())
    }

    /// `S^{-1} = {-s : s in S}`.
    pub fn inverse(&self) -> ConnectionSet {
        let mut idx: Vec<usize> = self.indices.iter().map(|&i| self.group.neg_idx(i)).collect();
        idx.sort_unstable();
        Self::from_sorted(self.group.clone(), idx)
    }

    /// `S ∪ S^{-1}`.
    pub fn symmetric_closure(&self) -> ConnectionSet {
        self.union(&self.inverse()).expect("same group")
    }

    /// `S ∪ {0}`.
    pub fn with_identity(&self) -> ConnectionSet {
        if self.contains_identity {
            return self.clone();
        }
        let mut idx = Vec::with_capacity(self.len() + 1);
        idx.push(0);
        idx.extend_from_slice(&self.indices);
        Self::from_sorted(self.group.clone(), idx)
    }

    pub fn without_identity(&self) -> ConnectionSet {
        Self::from_sorted(self.group.clone(), self.indices.iter().copied().filter(|&i| i != 0).collect())
    }

    fn same_group(&self, other: &ConnectionSet) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch {
                expected: self.group.moduli().to_vec(),
                actual: other.group.moduli().to_vec(),
            });
        }
        Ok(())
    }

    pub fn union(&self, other: &ConnectionSet) -> Result<ConnectionSet> {
        self.same_group(other)?;
        let mut idx = self.indices.clone();
        idx.extend_from_slice(&other.indices);
        idx.sort_unstable();
        idx.dedup();
        Ok(Self::from_sorted(self.group.clone(), idx))
    }

    pub fn intersection(&self, other: &ConnectionSet) -> Result<ConnectionSet> {
        self.same_group(other)?;
        Ok(Self::from_sorted(
            self.group.clone(),
            self.indices.iter().copied().filter(|&i| other.contains_index(i)).collect(),
        ))
    }

    /// `G ∖ S`.
    pub fn complement(&self) -> ConnectionSet {
        Self::from_sorted(
            self.group.clone(),
            (0..self.group.order()).filter(|&i| !self.contains_index(i)).collect(),
        )
    }

    /// Translate: `S + t`.
    pub fn translate(&self, t: usize) -> ConnectionSet {
        let mut idx: Vec<usize> = self.indices.iter().map(|&i| self.group.add_idx(i, t)).collect();
        idx.sort_unstable();
        Self::from_sorted(self.group.clone(), idx)
    }

    /// True iff `S` is nonempty and closed under addition and negation.
    pub fn is_subgroup(&self) -> bool {
        if !self.contains_identity {
            return false;
        }
        let mask = self.mask();
        self.indices.iter().all(|&a| {
            mask.contains(self.group.neg_idx(a))
                && self.indices.iter().all(|&b| mask.contains(self.group.add_idx(a, b)))
        })
    }

    /// Pads every element with `extra` zero coordinates of modulus `modulus`,
    /// embedding `S ⊆ G` into `G x (Z_modulus)^extra`.
    pub fn embed(&self, modulus: u32, extra: usize) -> Result<ConnectionSet> {
        let tail = FiniteAbelianGroup::new(&vec![modulus; extra])?;
        let big = self.group.direct_product(&tail)?;
        let elems: Vec<GroupElement> = self.elements().map(|e| e.padded(extra)).collect();
        Self::from_elements(&big, &elems)
    }
}
