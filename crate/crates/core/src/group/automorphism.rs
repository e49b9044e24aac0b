use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::limits::Limits;

use super::{ConnectionSet, FiniteAbelianGroup, GroupElement};

/// An automorphism stored as an explicit bijection on element indices, with a
/// matrix witness when the group is `(Z_p)^r`.
///
/// Equality is table equality.
#[derive(Clone, Debug)]
pub struct GroupAutomorphism {
    group: FiniteAbelianGroup,
    table: Vec<usize>,
    matrix: Option<Vec<Vec<u32>>>,
}

impl PartialEq for GroupAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.table == other.table
    }
}

impl Eq for GroupAutomorphism {}

impl GroupAutomorphism {
    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        Self::from_generator_images_unchecked(group, &(0..group.rank()).map(|i| basis_idx(group, i)).collect::<Vec<_>>())
    }

    /// `g ↦ -g`, an automorphism of every abelian group.
    pub fn negation(group: &FiniteAbelianGroup) -> Self {
        Self::from_generator_images_unchecked(
            group,
            &(0..group.rank()).map(|i| group.neg_idx(basis_idx(group, i))).collect::<Vec<_>>(),
        )
    }

    /// Builds `x ↦ M x (mod p)` on `(Z_p)^r`; `matrix[row][col]`.
    pub fn from_matrix(group: &FiniteAbelianGroup, matrix: Vec<Vec<u32>>) -> Result<Self> {
        let p = group
            .elementary_prime()
            .ok_or_else(|| Error::InvalidParameter(format!("{group} is not elementary abelian")))?;
        let r = group.rank();
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r || row.iter().any(|&x| x >= p)) {
            return Err(Error::InvalidParameter(format!("expected a reduced {r}x{r} matrix mod {p}")));
        }
        if det_mod_p(&matrix, p) == 0 {
            return Err(Error::NotAnAutomorphism("matrix is singular mod p".into()));
        }
        let images: Vec<usize> = (0..r)
            .map(|c| {
                let col: Vec<u64> = (0..r).map(|row| matrix[row][c] as u64).collect();
                group.index_of(&group.element(&col).expect("reduced")).expect("member")
            })
            .collect();
        let mut aut = Self::from_generator_images_unchecked(group, &images);
        aut.matrix = Some(matrix);
        Ok(aut)
    }

    /// Validates an explicit table: it must be a bijection and additive.
    pub fn from_table(group: &FiniteAbelianGroup, table: Vec<usize>) -> Result<Self> {
        if table.len() != group.order() {
            return Err(Error::NotAnAutomorphism(format!(
                "table has {} entries, group has {}",
                table.len(),
                group.order()
            )));
        }
        let mut aut = GroupAutomorphism { group: group.clone(), table, matrix: None };
        if !aut.is_bijection() {
            return Err(Error::NotAnAutomorphism("table is not a bijection".into()));
        }
        if !aut.is_homomorphism() {
            return Err(Error::NotAnAutomorphism("table is not additive".into()));
        }
        if group.elementary_prime().is_some() {
            aut.matrix = Some(aut.derive_matrix());
        }
        Ok(aut)
    }

    fn from_generator_images_unchecked(group: &FiniteAbelianGroup, images: &[usize]) -> Self {
        let table = table_from_images(group, images);
        let mut aut = GroupAutomorphism { group: group.clone(), table, matrix: None };
        if group.elementary_prime().is_some() {
            aut.matrix = Some(aut.derive_matrix());
        }
        aut
    }

    fn derive_matrix(&self) -> Vec<Vec<u32>> {
        let r = self.group.rank();
        let cols: Vec<GroupElement> =
            (0..r).map(|i| self.group.element_at(self.table[basis_idx(&self.group, i)])).collect();
        (0..r).map(|row| (0..r).map(|c| cols[c].coords()[row]).collect()).collect()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn matrix(&self) -> Option<&[Vec<u32>]> {
        self.matrix.as_deref()
    }

    #[inline]
    pub fn image_idx(&self, g: usize) -> usize {
        self.table[g]
    }

    pub fn image(&self, g: &GroupElement) -> Result<GroupElement> {
        Ok(self.group.element_at(self.table[self.group.index_of(g)?]))
    }

    /// Elementwise image `α(S)`.
    pub fn apply(&self, set: &ConnectionSet) -> Result<ConnectionSet> {
        if set.group() != &self.group {
            return Err(Error::GroupMismatch {
                expected: self.group.moduli().to_vec(),
                actual: set.group().moduli().to_vec(),
            });
        }
        ConnectionSet::from_indices(&self.group, set.indices().iter().map(|&i| self.table[i]))
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        let table: Vec<usize> = self.table.iter().map(|&x| other.table[x]).collect();
        let mut aut = GroupAutomorphism { group: self.group.clone(), table, matrix: None };
        if self.group.elementary_prime().is_some() {
            aut.matrix = Some(aut.derive_matrix());
        }
        aut
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        self.table.iter().all(|&x| x < seen.len() && !std::mem::replace(&mut seen[x], true))
    }

    /// Exact additivity test: `f(g + e_i) = f(g) + f(e_i)` for every `g` and
    /// every standard generator `e_i` forces `f` to be a homomorphism.
    pub fn is_homomorphism(&self) -> bool {
        let g = &self.group;
        (0..g.rank()).all(|i| {
            let e = basis_idx(g, i);
            let fe = self.table[e];
            (0..g.order()).all(|x| self.table[g.add_idx(x, e)] == g.add_idx(self.table[x], fe))
        })
    }
}

fn basis_idx(group: &FiniteAbelianGroup, i: usize) -> usize {
    group.index_of(&group.basis(i)).expect("basis element")
}

/// Extends images of the standard generators additively to a full table.
fn table_from_images(group: &FiniteAbelianGroup, images: &[usize]) -> Vec<usize> {
    let n = group.order();
    let mut table = vec![0usize; n];
    let strides: Vec<usize> = (0..group.rank()).map(|i| basis_idx(group, i)).collect();
    for idx in 1..n {
        // rightmost nonzero coordinate
        let i = (0..group.rank()).rev().find(|&i| !(idx / strides[i]).is_multiple_of(group.moduli()[i] as usize)).unwrap();
        table[idx] = group.add_idx(table[idx - strides[i]], images[i]);
    }
    table
}

pub(crate) fn det_mod_p(matrix: &[Vec<u32>], p: u32) -> u64 {
    let p = p as u64;
    let n = matrix.len();
    let mut m: Vec<Vec<u64>> = matrix.iter().map(|r| r.iter().map(|&x| x as u64 % p).collect()).collect();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = (p - det) % p;
        }
        det = det * m[col][col] % p;
        let inv = pow_mod(m[col][col], p - 2, p);
        for r in col + 1..n {
            let f = m[r][col] * inv % p;
            if f != 0 {
                for c in col..n {
                    m[r][c] = (m[r][c] + p * p - f * m[col][c]) % p;
                }
            }
        }
    }
    det
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// `|GL(r, p)| = prod_{i<r} (p^r - p^i)`, or `None` on overflow.
pub fn gl_order(r: usize, p: u32) -> Option<u128> {
    let pr = (p as u128).checked_pow(r as u32)?;
    (0..r).try_fold(1u128, |acc, i| acc.checked_mul(pr - (p as u128).pow(i as u32)))
}

/// Enumerates every automorphism of `group` exactly once.
///
/// For `(Z_p)^r` the count is `|GL(r, p)|`, gated by `limits.gl_order`; other
/// groups are searched over generator images and gated by
/// `limits.brute_force_aut_order`.
pub fn enumerate_automorphisms(group: &FiniteAbelianGroup, limits: &Limits) -> Result<AutomorphismIter> {
    if let Some(p) = group.elementary_prime() {
        let count = gl_order(group.rank(), p).unwrap_or(u128::MAX);
        if count > limits.gl_order {
            return Err(Error::infeasible(format!("|GL({}, {p})|", group.rank()), limits.gl_order, count));
        }
    } else if group.order() as u64 > limits.brute_force_aut_order {
        return Err(Error::infeasible(
            format!("brute-force automorphism search on {group}"),
            limits.brute_force_aut_order as u128,
            group.order() as u128,
        ));
    }
    Ok(AutomorphismIter::new(group))
}

/// Backtracking enumeration over images `h_1, ..., h_d` of the standard
/// generators: `h_i` must have order dividing `n_i`, and no nonzero multiple
/// `t h_i` (`0 < t < n_i`) may land in the span of the earlier images.
pub struct AutomorphismIter {
    group: FiniteAbelianGroup,
    candidates: Vec<Vec<usize>>,
    pos: Vec<usize>,
    images: Vec<usize>,
    spans: Vec<Vec<usize>>,
    span_masks: Vec<BitSet>,
    depth: usize,
    done: bool,
}

impl AutomorphismIter {
    fn new(group: &FiniteAbelianGroup) -> Self {
        let r = group.rank();
        let candidates: Vec<Vec<usize>> = group
            .moduli()
            .iter()
            .map(|&n| (0..group.order()).filter(|&x| (n as u64).is_multiple_of(group.element_order_idx(x))).collect())
            .collect();
        let mut span_masks = vec![BitSet::new(group.order()); r + 1];
        span_masks[0].insert(0);
        AutomorphismIter {
            group: group.clone(),
            candidates,
            pos: vec![0; r],
            images: vec![0; r],
            spans: {
                let mut s = vec![Vec::new(); r + 1];
                s[0] = vec![0];
                s
            },
            span_masks,
            depth: 0,
            done: false,
        }
    }

    fn valid(&self, lvl: usize, h: usize) -> bool {
        let n = self.group.moduli()[lvl] as i64;
        (1..n).all(|t| !self.span_masks[lvl].contains(self.group.scale_idx(h, t)))
    }

    fn extend_span(&mut self, lvl: usize, h: usize) {
        let n = self.group.moduli()[lvl] as i64;
        let mut next = Vec::with_capacity(self.spans[lvl].len() * n as usize);
        let mut mask = BitSet::new(self.group.order());
        for t in 0..n {
            let th = self.group.scale_idx(h, t);
            for &x in &self.spans[lvl] {
                let y = self.group.add_idx(x, th);
                next.push(y);
                mask.insert(y);
            }
        }
        self.spans[lvl + 1] = next;
        self.span_masks[lvl + 1] = mask;
    }
}

impl Iterator for AutomorphismIter {
    type Item = GroupAutomorphism;

    fn next(&mut self) -> Option<GroupAutomorphism> {
        if self.done {
            return None;
        }
        let r = self.group.rank();
        if r == 0 {
            self.done = true;
            return Some(GroupAutomorphism::identity(&self.group));
        }
        loop {
            let lvl = self.depth;
            let mut found = None;
            while self.pos[lvl] < self.candidates[lvl].len() {
                let h = self.candidates[lvl][self.pos[lvl]];
                self.pos[lvl] += 1;
                if self.valid(lvl, h) {
                    found = Some(h);
                    break;
                }
            }
            match found {
                Some(h) => {
                    self.images[lvl] = h;
                    if lvl + 1 == r {
                        return Some(GroupAutomorphism::from_generator_images_unchecked(&self.group, &self.images));
                    }
                    self.extend_span(lvl, h);
                    self.depth = lvl + 1;
                    self.pos[lvl + 1] = 0;
                }
                None => {
                    if lvl == 0 {
                        self.done = true;
                        return None;
                    }
                    self.depth = lvl - 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(moduli: &[u32]) -> usize {
        let g = FiniteAbelianGroup::new(moduli).unwrap();
        enumerate_automorphisms(&g, &Limits::default()).unwrap().count()
    }

    /// Independent count of invertible r x r matrices mod p by brute force.
    fn brute_gl(r: usize, p: u32) -> usize {
        let entries = r * r;
        let total = (p as usize).pow(entries as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let m: Vec<Vec<u32>> = (0..r)
                    .map(|_| {
                        (0..r)
                            .map(|_| {
                                let x = (c % p as usize) as u32;
                                c /= p as usize;
                                x
                            })
                            .collect()
                    })
                    .collect();
                det_mod_p(&m, p) != 0
            })
            .count()
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(count(&[3]), 2);
        assert_eq!(brute_gl(2, 2), 6);
        assert_eq!(count(&[2, 2]), 6);
        assert_eq!(brute_gl(2, 3), 48);
        assert_eq!(count(&[3, 3]), 48);
        assert_eq!(count(&[2, 2, 2]), 168);
        assert_eq!(count(&[]), 1);
        assert_eq!(count(&[8]), 4);
        assert_eq!(count(&[2, 4]), 8);
        assert_eq!(count(&[6]), 2);
        assert_eq!(count(&[4, 4]), 96);
    }

    #[test]
    fn enumerated_automorphisms_are_distinct_homomorphisms() {
        for moduli in [&[2u32, 2, 2][..], &[2, 4], &[3, 3], &[6], &[4, 4]] {
            let g = FiniteAbelianGroup::new(moduli).unwrap();
            let all: Vec<_> = enumerate_automorphisms(&g, &Limits::default()).unwrap().collect();
            let mut tables: Vec<_> = all.iter().map(|a| a.table().to_vec()).collect();
            tables.sort();
            tables.dedup();
            assert_eq!(tables.len(), all.len());
            for a in &all {
                assert!(a.is_bijection() && a.is_homomorphism());
                if let Some(m) = a.matrix() {
                    assert_ne!(det_mod_p(m, g.elementary_prime().unwrap()), 0);
                    for x in g.elements() {
                        let img = a.image(&x).unwrap();
                        let p = g.elementary_prime().unwrap();
                        let mx: Vec<u32> = m
                            .iter()
                            .map(|row| row.iter().zip(x.coords()).map(|(a, b)| a * b).sum::<u32>() % p)
                            .collect();
                        assert_eq!(img.coords(), &mx[..]);
                    }
                }
            }
        }
    }

    #[test]
    fn apply_examples() {
        let z5 = FiniteAbelianGroup::cyclic(5).unwrap();
        let s = ConnectionSet::from_residues(&z5, &[1]).unwrap();
        assert_eq!(GroupAutomorphism::identity(&z5).apply(&s).unwrap(), s);
        assert_eq!(
            GroupAutomorphism::negation(&z5).apply(&s).unwrap(),
            ConnectionSet::from_residues(&z5, &[4]).unwrap()
        );
        let v = FiniteAbelianGroup::elementary(3, 2).unwrap();
        let swap = GroupAutomorphism::from_matrix(&v, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let e1 = ConnectionSet::from_elements(&v, &[v.basis(0)]).unwrap();
        let e2 = ConnectionSet::from_elements(&v, &[v.basis(1)]).unwrap();
        assert_eq!(swap.apply(&e1).unwrap(), e2);
        assert!(swap.apply(&s).is_err());
    }

    #[test]
    fn rejects_non_automorphisms() {
        let v = FiniteAbelianGroup::elementary(3, 2).unwrap();
        assert!(GroupAutomorphism::from_matrix(&v, vec![vec![1, 2], vec![2, 1]]).is_err());
        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        assert!(GroupAutomorphism::from_table(&z4, vec![0, 2, 1, 3]).is_err());
        assert!(GroupAutomorphism::from_table(&z4, vec![0, 3, 2, 1]).is_ok());
        assert!(GroupAutomorphism::from_table(&z4, vec![0, 1, 1, 3]).is_err());
    }

    #[test]
    fn gl_gate() {
        let g = FiniteAbelianGroup::elementary(3, 8).unwrap();
        let err = enumerate_automorphisms(&g, &Limits::default()).err().unwrap();
        assert!(err.is_infeasible());
        let big = FiniteAbelianGroup::new(&[4, 4, 8]).unwrap();
        assert!(enumerate_automorphisms(&big, &Limits::default()).err().unwrap().is_infeasible());
        assert_eq!(gl_order(2, 3), Some(48));
    }
}
