//! Finite abelian groups presented as direct products of cyclic groups.
//!
//! Elements are residue vectors; the group enumerates them in lexicographic
//! coordinate order, and that order is the vertex numbering used by every
//! graph built on top of a group.

mod automorphism;
mod set;

pub use automorphism::{enumerate_automorphisms, AutomorphismIter, GroupAutomorphism};
pub use set::ConnectionSet;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Z_{n_1} x ... x Z_{n_d}`. The empty product is the trivial group.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct FiniteAbelianGroup {
    moduli: Vec<u32>,
    strides: Vec<usize>,
    order: usize,
}

impl TryFrom<Vec<u32>> for FiniteAbelianGroup {
    type Error = Error;

    fn try_from(moduli: Vec<u32>) -> Result<Self> {
        FiniteAbelianGroup::new(&moduli)
    }
}

impl From<FiniteAbelianGroup> for Vec<u32> {
    fn from(g: FiniteAbelianGroup) -> Vec<u32> {
        g.moduli
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FiniteAbelianGroup {
    pub fn new(moduli: &[u32]) -> Result<Self> {
        let mut order: usize = 1;
        for &m in moduli {
            if m < 2 {
                return Err(Error::BadModulus(m as u64));
            }
            order = order.checked_mul(m as usize).ok_or(Error::OrderOverflow)?;
        }
        if order > u32::MAX as usize {
            return Err(Error::OrderOverflow);
        }
        let mut strides = vec![1usize; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1] as usize;
        }
        Ok(FiniteAbelianGroup { moduli: moduli.to_vec(), strides, order })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { moduli: Vec::new(), strides: Vec::new(), order: 1 }
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(&[n])
    }

    /// `(Z_p)^r`.
    pub fn elementary(p: u32, r: usize) -> Result<Self> {
        Self::new(&vec![p; r])
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// The common prime `p` when the group is `(Z_p)^r` with `r >= 1`.
    pub fn elementary_prime(&self) -> Option<u32> {
        let p = *self.moduli.first()?;
        (self.moduli.iter().all(|&m| m == p) && is_prime(p as u64)).then_some(p)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { coords: vec![0; self.rank()] }
    }

    /// Standard generator `e_i` (1 in coordinate `i`).
    pub fn basis(&self, i: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        GroupElement { coords }
    }

    /// Builds an element from already-reduced coordinates.
    pub fn element(&self, coords: &[u64]) -> Result<GroupElement> {
        if coords.len() != self.rank() || coords.iter().zip(&self.moduli).any(|(&c, &m)| c >= m as u64) {
            return Err(Error::NotAnElement { coords: coords.to_vec(), moduli: self.moduli.clone() });
        }
        Ok(GroupElement { coords: coords.iter().map(|&c| c as u32).collect() })
    }

    /// Builds an element, reducing each coordinate modulo its factor.
    pub fn element_reduced(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::NotAnElement {
                coords: coords.iter().map(|&c| c as u64).collect(),
                moduli: self.moduli.clone(),
            });
        }
        Ok(GroupElement {
            coords: coords.iter().zip(&self.moduli).map(|(&c, &m)| c.rem_euclid(m as i64) as u32).collect(),
        })
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.coords.len() == self.rank() && g.coords.iter().zip(&self.moduli).all(|(&c, &m)| c < m)
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::NotAnElement {
                coords: g.coords.iter().map(|&c| c as u64).collect(),
                moduli: self.moduli.clone(),
            })
        }
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.check(g)?;
        Ok(self.index_unchecked(&g.coords))
    }

    #[inline]
    fn index_unchecked(&self, coords: &[u32]) -> usize {
        coords.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum()
    }

    /// The element with lexicographic index `idx`.
    pub fn element_at(&self, idx: usize) -> GroupElement {
        assert!(idx < self.order, "index {idx} out of range for group of order {}", self.order);
        GroupElement {
            coords: self
                .strides
                .iter()
                .zip(&self.moduli)
                .map(|(&s, &m)| ((idx / s) % m as usize) as u32)
                .collect(),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a.coords.iter().zip(&b.coords).zip(&self.moduli).map(|((&x, &y), &m)| (x + y) % m).collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a.coords.iter().zip(&self.moduli).map(|(&x, &m)| (m - x) % m).collect(),
        }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            coords: a.coords.iter().zip(&b.coords).zip(&self.moduli).map(|((&x, &y), &m)| (x + m - y) % m).collect(),
        }
    }

    /// `t * a` for an integer multiplier.
    pub fn scale(&self, a: &GroupElement, t: i64) -> GroupElement {
        GroupElement {
            coords: a
                .coords
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| ((x as i64 * t).rem_euclid(m as i64)) as u32)
                .collect(),
        }
    }

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&s, &m) in self.strides.iter().zip(&self.moduli) {
            let m = m as usize;
            let x = (a / s) % m;
            let y = (b / s) % m;
            let z = x + y;
            out += if z >= m { z - m } else { z } * s;
        }
        out
    }

    #[inline]
    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&s, &m) in self.strides.iter().zip(&self.moduli) {
            let m = m as usize;
            let x = (a / s) % m;
            let y = (b / s) % m;
            out += if x >= y { x - y } else { x + m - y } * s;
        }
        out
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        self.sub_idx(0, a)
    }

    pub fn scale_idx(&self, a: usize, t: i64) -> usize {
        let mut out = 0;
        for (&s, &m) in self.strides.iter().zip(&self.moduli) {
            let x = ((a / s) % m as usize) as i64;
            out += (x * t).rem_euclid(m as i64) as usize * s;
        }
        out
    }

    /// Additive order of an element.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.coords.iter().zip(&self.moduli).fold(1u64, |acc, (&x, &m)| {
            let ord = m as u64 / gcd(x as u64, m as u64);
            lcm(acc, ord)
        })
    }

    pub fn element_order_idx(&self, a: usize) -> u64 {
        self.element_order(&self.element_at(a))
    }

    /// `G x H` with the moduli of `G` first.
    pub fn direct_product(&self, other: &FiniteAbelianGroup) -> Result<FiniteAbelianGroup> {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        FiniteAbelianGroup::new(&moduli)
    }

    /// Exponent (lcm of the moduli).
    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1u64, |acc, &m| lcm(acc, m as u64))
    }

    /// Multiset of element orders, sorted by order. For finite abelian groups
    /// this census determines the isomorphism type.
    pub fn order_census(&self) -> Vec<(u64, usize)> {
        let mut census = std::collections::BTreeMap::new();
        for g in self.elements() {
            *census.entry(self.element_order(&g)).or_insert(0usize) += 1;
        }
        census.into_iter().collect()
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    coords: Vec<u32>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Appends zero coordinates (natural embedding into a larger product).
    pub fn padded(&self, extra: usize) -> GroupElement {
        let mut coords = self.coords.clone();
        coords.extend(std::iter::repeat_n(0, extra));
        GroupElement { coords }
    }

    pub fn concat(&self, other: &GroupElement) -> GroupElement {
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        GroupElement { coords }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
