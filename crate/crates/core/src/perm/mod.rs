//! Permutation groups: stabilizer chains, regular representations,
//! regular-subgroup enumeration and subgroup conjugacy.

mod chain;
mod permutation;
mod regular;

use std::sync::OnceLock;

use num_bigint::BigUint;

pub use chain::StabChain;
pub use permutation::Permutation;
pub use regular::{
    are_conjugate_subgroups, enumerate_regular_subgroups, right_regular_representation, ConjugacyClass,
};

use crate::error::{Error, Result};

/// A permutation group given by generators; the stabilizer chain is built on
/// first use.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        Ok(PermutationGroup { degree, generators, chain: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup { degree, generators: Vec::new(), chain: OnceLock::new() }
    }

    /// The full symmetric group, generated by an `n`-cycle and a transposition.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::from_vec_unchecked((0..n as u32).map(|i| (i + 1) % n as u32).collect()));
            let mut t: Vec<u32> = (0..n as u32).collect();
            t.swap(0, 1);
            gens.push(Permutation::from_vec_unchecked(t));
        }
        PermutationGroup { degree: n, generators: gens, chain: OnceLock::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| StabChain::new(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    /// Order as a machine integer, `None` if it does not fit.
    pub fn order_u128(&self) -> Option<u128> {
        self.chain().order_u128()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// Point orbits, each sorted, listed by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.degree];
        let mut out = Vec::new();
        for s in 0..self.degree {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut orbit = vec![s];
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                i += 1;
                for g in &self.generators {
                    let y = g.apply(x);
                    if comp[y] == usize::MAX {
                        comp[y] = id;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// Transitive with `|P| = degree`.
    pub fn is_regular_action(&self) -> bool {
        self.is_transitive() && self.order() == BigUint::from(self.degree)
    }

    /// Generators of the stabilizer of `v`.
    pub fn stabilizer(&self, v: usize) -> PermutationGroup {
        let chain = StabChain::new(self.degree, self.chain().strong_generators().as_slice(), &[v]);
        let gens = chain.stabilizer_generators(1);
        PermutationGroup { degree: self.degree, generators: gens, chain: OnceLock::new() }
    }

    /// Calls `f` on every element; `f` returns false to stop.
    pub fn for_each_element(&self, f: impl FnMut(&Permutation) -> bool) {
        self.chain().for_each_element(f)
    }

    /// All elements, sorted, if there are at most `cap` of them.
    pub fn elements(&self, cap: u128) -> Result<Vec<Permutation>> {
        let order = self.order_u128().unwrap_or(u128::MAX);
        if order > cap {
            return Err(Error::infeasible("group element listing", cap, order));
        }
        let mut out = Vec::with_capacity(order as usize);
        self.for_each_element(|g| {
            out.push(g.clone());
            true
        });
        out.sort_unstable();
        Ok(out)
    }

    /// Element-order census: `(order, count)` pairs sorted by order.
    pub fn order_census(&self, cap: u128) -> Result<Vec<(u64, usize)>> {
        let mut census = std::collections::BTreeMap::new();
        for g in self.elements(cap)? {
            *census.entry(g.order()).or_insert(0usize) += 1;
        }
        Ok(census.into_iter().collect())
    }

    /// The conjugate group `a⁻¹ P a`.
    pub fn conjugate_by(&self, a: &Permutation) -> PermutationGroup {
        PermutationGroup {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.conjugate_by(a)).collect(),
            chain: OnceLock::new(),
        }
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermutationGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    /// Same underlying set of permutations.
    pub fn same_group(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.contains_group(other)
    }
}

/// One permutation per line in image-sequence form.
pub fn write_generators(gens: &[Permutation]) -> String {
    gens.iter().map(|g| format!("{g}\n")).collect()
}

pub fn parse_generators(text: &str) -> Result<Vec<Permutation>> {
    let gens: Vec<Permutation> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect::<Result<_>>()?;
    if let Some(g) = gens.iter().find(|g| g.degree() != gens[0].degree()) {
        return Err(Error::DegreeMismatch(gens[0].degree(), g.degree()));
    }
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn p(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn closure(degree: usize, gens: &[Permutation]) -> BTreeSet<Permutation> {
        let mut seen = BTreeSet::new();
        seen.insert(Permutation::identity(degree));
        let mut frontier = vec![Permutation::identity(degree)];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn chain_orders() {
        assert_eq!(PermutationGroup::symmetric(4).order(), BigUint::from(24u32));
        let five = PermutationGroup::new(5, vec![p(&[1, 2, 3, 4, 0])]).unwrap();
        assert_eq!(five.order(), BigUint::from(5u32));
        assert_eq!(PermutationGroup::new(6, vec![]).unwrap().order(), BigUint::from(1u32));
        assert_eq!(PermutationGroup::symmetric(12).order_u128(), Some(479_001_600));
        assert!(PermutationGroup::new(3, vec![p(&[1, 0])]).is_err());
    }

    #[test]
    fn chain_matches_closure() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..60 {
            let degree = 3 + trial % 5;
            let ngens = 1 + trial % 3;
            let gens: Vec<Permutation> = (0..ngens)
                .map(|_| {
                    let mut v: Vec<u32> = (0..degree as u32).collect();
                    for i in (1..degree).rev() {
                        v.swap(i, rng.gen_range(0..=i));
                    }
                    p(&v)
                })
                .collect();
            let group = PermutationGroup::new(degree, gens.clone()).unwrap();
            let elems = closure(degree, &gens);
            assert_eq!(group.order(), BigUint::from(elems.len()));
            assert!(elems.iter().all(|e| group.contains(e)));
            let listed: BTreeSet<_> = group.elements(10_000).unwrap().into_iter().collect();
            assert_eq!(listed, elems);
            for g in &gens {
                assert!(group.chain().contains(g));
            }
        }
    }

    #[test]
    fn membership_rejects_outsiders() {
        let c = PermutationGroup::new(4, vec![p(&[1, 2, 3, 0])]).unwrap();
        assert!(c.contains(&p(&[2, 3, 0, 1])));
        assert!(!c.contains(&p(&[1, 0, 2, 3])));
        assert!(!c.contains(&p(&[1, 0, 2])));
    }

    #[test]
    fn regular_action() {
        assert!(!PermutationGroup::symmetric(4).is_regular_action());
        assert!(!PermutationGroup::trivial(2).is_regular_action());
        let c = PermutationGroup::new(5, vec![p(&[1, 2, 3, 4, 0])]).unwrap();
        assert!(c.is_regular_action());
    }

    #[test]
    fn stabilizers() {
        let s4 = PermutationGroup::symmetric(4);
        for v in 0..4 {
            let st = s4.stabilizer(v);
            assert_eq!(st.order(), BigUint::from(6u32));
            assert!(st.generators().iter().all(|g| g.apply(v) == v));
        }
        let c = PermutationGroup::new(4, vec![p(&[1, 2, 3, 0])]).unwrap();
        assert_eq!(c.stabilizer(2).order(), BigUint::from(1u32));
    }

    #[test]
    fn orbits_and_census() {
        let g = PermutationGroup::new(5, vec![p(&[1, 0, 2, 4, 3])]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert_eq!(PermutationGroup::symmetric(3).order_census(100).unwrap(), vec![(1, 1), (2, 3), (3, 2)]);
    }

    #[test]
    fn generator_text_round_trip() {
        let gens = vec![p(&[1, 2, 0]), p(&[0, 2, 1])];
        assert_eq!(parse_generators(&write_generators(&gens)).unwrap(), gens);
        assert!(parse_generators("0 1\n0 1 2\n").is_err());
    }
}
