use std::fmt;

use crate::error::{Error, Result};
use crate::group::lcm;

/// A bijection on `{0, ..., N-1}` in image-sequence form: `x ↦ images[x]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::NotAPermutation(format!("image {x} repeated or out of range on {n} points")));
            }
        }
        Ok(Permutation { images })
    }

    pub fn from_usize(images: &[usize]) -> Result<Self> {
        Self::new(images.iter().map(|&x| x as u32).collect())
    }

    pub(crate) fn from_vec_unchecked(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn to_usize(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    /// `self` followed by `other`: `x ↦ other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `a⁻¹ · self · a` in left-to-right order, i.e. `a(x) ↦ a(self(x))`.
    pub fn conjugate_by(&self, a: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.degree()];
        for x in 0..self.degree() {
            out[a.images[x] as usize] = a.images[self.images[x] as usize];
        }
        Permutation { images: out }
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        result
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i as u32 == x).count()
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 != x)
    }

    /// Sorted cycle lengths (fixed points included as 1-cycles).
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    /// True iff every cycle has length exactly `len`.
    pub fn is_uniform_cycle_type(&self, len: usize) -> bool {
        self.cycle_type().iter().all(|&l| l == len)
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().iter().fold(1u64, |acc, &l| lcm(acc, l as u64))
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        (0..self.degree()).all(|x| other.images[self.images[x] as usize] == self.images[other.images[x] as usize])
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Image-sequence form: space-separated images.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl std::str::FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_and_inverse() {
        let a = Permutation::new(vec![1, 2, 0, 3]).unwrap();
        let b = Permutation::new(vec![0, 1, 3, 2]).unwrap();
        assert_eq!(a.then(&b).images(), &[1, 3, 0, 2]);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.order(), 3);
        assert_eq!(a.pow(3), Permutation::identity(4));
        assert_eq!(a.cycle_type(), vec![1, 3]);
        assert_eq!(b.fixed_points(), 2);
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn conjugation_convention() {
        let p = Permutation::new(vec![1, 0, 2]).unwrap();
        let a = Permutation::new(vec![2, 1, 0]).unwrap();
        assert_eq!(p.conjugate_by(&a), a.inverse().then(&p).then(&a));
        // (0 1) conjugated by (0 2) is (1 2)
        assert_eq!(p.conjugate_by(&a).images(), &[0, 2, 1]);
    }

    #[test]
    fn parse_round_trip() {
        let p: Permutation = "2 0 1".parse().unwrap();
        assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
        assert!("0 2".parse::<Permutation>().is_err());
    }
}
