//! Incremental Schreier–Sims.
//!
//! Each level keeps a base point, the generators added at that level, the
//! orbit of the base point and explicit transversal elements (and their
//! inverses, which make sifting cheap). Extending a level with a new
//! generator pushes every resulting Schreier generator into the next level,
//! so every Schreier generator is a member of the next level's group once
//! `extend` returns.

use std::collections::VecDeque;

use num_bigint::BigUint;

use super::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[γ]` maps the base point to `γ`.
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        let mut inverse = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        inverse[base] = Some(Permutation::identity(degree));
        Level { base, gens: Vec::new(), orbit: vec![base], transversal, inverse }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    prefix: Vec<usize>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Builds a chain for `<gens>`. Base points start with `prefix`; further
    /// base points are the smallest point moved by the generator that forced
    /// the new level.
    pub fn new(degree: usize, gens: &[Permutation], prefix: &[usize]) -> Self {
        let mut chain = StabChain { degree, prefix: prefix.to_vec(), levels: Vec::new() };
        for (i, &b) in prefix.iter().enumerate() {
            debug_assert!(b < degree);
            debug_assert!(!prefix[..i].contains(&b));
            chain.levels.push(Level::new(b, degree));
        }
        for g in gens {
            chain.extend(0, g.clone());
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn orbit(&self, level: usize) -> &[usize] {
        &self.levels[level].orbit
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn order_u128(&self) -> Option<u128> {
        self.levels.iter().try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    /// Generators of the pointwise stabilizer of the first `level` base
    /// points (the strong generators living at `level` and below).
    pub fn stabilizer_generators(&self, level: usize) -> Vec<Permutation> {
        self.levels[level.min(self.levels.len())..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.stabilizer_generators(0)
    }

    fn sift_from(&self, start: usize, mut g: Permutation) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let gamma = g.apply(level.base);
            match &level.inverse[gamma] {
                Some(inv) => g = g.then(inv),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, lvl) = self.sift_from(0, g.clone());
        lvl == self.levels.len() && h.is_identity()
    }

    fn contains_from(&self, start: usize, g: &Permutation) -> bool {
        let (h, lvl) = self.sift_from(start, g.clone());
        lvl == self.levels.len() && h.is_identity()
    }

    fn extend(&mut self, i: usize, g: Permutation) {
        if self.contains_from(i, &g) {
            return;
        }
        if i == self.levels.len() {
            let base = self.prefix.get(i).copied().or_else(|| g.first_moved_point()).expect("non-identity");
            self.levels.push(Level::new(base, self.degree));
        }
        self.levels[i].gens.push(g.clone());
        let mut queue = VecDeque::new();
        let old = self.levels[i].orbit.clone();
        for gamma in old {
            self.process(i, gamma, &g, &mut queue);
        }
        while let Some(delta) = queue.pop_front() {
            let gens = self.levels[i].gens.clone();
            for s in &gens {
                self.process(i, delta, s, &mut queue);
            }
        }
    }

    fn process(&mut self, i: usize, gamma: usize, s: &Permutation, queue: &mut VecDeque<usize>) {
        let delta = s.apply(gamma);
        let u_gamma = self.levels[i].transversal[gamma].clone().expect("orbit point");
        if let Some(inv_delta) = &self.levels[i].inverse[delta] {
            let schreier = u_gamma.then(s).then(inv_delta);
            if !schreier.is_identity() {
                self.extend(i + 1, schreier);
            }
        } else {
            let u_delta = u_gamma.then(s);
            let level = &mut self.levels[i];
            level.inverse[delta] = Some(u_delta.inverse());
            level.transversal[delta] = Some(u_delta);
            level.orbit.push(delta);
            queue.push_back(delta);
        }
    }

    /// Calls `f` on every group element; stops early when `f` returns false.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation) -> bool) {
        let id = Permutation::identity(self.degree);
        self.walk(self.levels.len(), id, &mut f);
    }

    // Elements are h · u_γ over levels from the bottom up.
    fn walk(&self, level: usize, acc: Permutation, f: &mut impl FnMut(&Permutation) -> bool) -> bool {
        if level == 0 {
            return f(&acc);
        }
        let l = &self.levels[level - 1];
        for &gamma in &l.orbit {
            let next = acc.then(l.transversal[gamma].as_ref().unwrap());
            if !self.walk(level - 1, next, f) {
                return false;
            }
        }
        true
    }
}
