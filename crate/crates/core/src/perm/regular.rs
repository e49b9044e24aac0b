use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;

use super::{Permutation, PermutationGroup};
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::limits::Limits;

/// `H_R`: the permutations `x ↦ x + h` of the group's element indices,
/// generated by the translations along the standard basis.
pub fn right_regular_representation(h: &FiniteAbelianGroup, limits: &Limits) -> Result<PermutationGroup> {
    let n = h.order();
    if n as u64 > limits.enumeration_order {
        return Err(Error::infeasible("right regular representation", limits.enumeration_order as u128, n as u128));
    }
    let gens = (0..h.rank())
        .filter(|&i| h.moduli()[i] > 1)
        .map(|i| {
            let b = h.index_of(&h.basis(i)).expect("basis element");
            Permutation::from_vec_unchecked((0..n).map(|x| h.add_idx(x, b) as u32).collect())
        })
        .collect();
    PermutationGroup::new(n, gens)
}

/// Sorted element list of `<gens>`, used as a canonical subgroup key.
fn sorted_elements(gens: &[Permutation], degree: usize) -> Vec<Permutation> {
    let mut seen = BTreeSet::new();
    seen.insert(Permutation::identity(degree));
    let mut queue = VecDeque::from([Permutation::identity(degree)]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

struct Search<'a> {
    moduli: Vec<usize>,
    candidates: HashMap<usize, Vec<&'a Permutation>>,
    degree: usize,
}

impl Search<'_> {
    /// Extends a commuting tuple `images` whose span `elems` acts semiregularly.
    fn extend(&self, images: &mut Vec<Permutation>, elems: &[Permutation], out: &mut Vec<Vec<Permutation>>) {
        let i = images.len();
        if i == self.moduli.len() {
            out.push(images.clone());
            return;
        }
        let m = self.moduli[i];
        for &x in &self.candidates[&m] {
            if !images.iter().all(|y| y.commutes_with(x)) {
                continue;
            }
            let Some(next) = self.grow(elems, x, m) else { continue };
            images.push(x.clone());
            self.extend(images, &next, out);
            images.pop();
        }
    }

    /// `elems · <x>` if every new element `e·x^k` (0 < k < m) is fixed-point free.
    fn grow(&self, elems: &[Permutation], x: &Permutation, m: usize) -> Option<Vec<Permutation>> {
        let mut next = elems.to_vec();
        let mut power = Permutation::identity(self.degree);
        for _ in 1..m {
            power = power.then(x);
            for e in elems {
                let y = e.then(&power);
                if !y.is_fixed_point_free() {
                    return None;
                }
                next.push(y);
            }
        }
        Some(next)
    }
}

/// All subgroups of `a` isomorphic to `h` acting regularly on the points,
/// sorted by their element lists.
pub fn enumerate_regular_subgroups(
    a: &PermutationGroup,
    h: &FiniteAbelianGroup,
    limits: &Limits,
) -> Result<Vec<PermutationGroup>> {
    let degree = a.degree();
    if degree != h.order() {
        return Err(Error::DegreeMismatch(h.order(), degree));
    }
    let elements = a.elements(limits.subgroup_search_order)?;
    let moduli: Vec<usize> = h.moduli().iter().map(|&m| m as usize).filter(|&m| m > 1).collect();
    let mut candidates: HashMap<usize, Vec<&Permutation>> = HashMap::new();
    for &m in &moduli {
        candidates.entry(m).or_insert_with(|| elements.iter().filter(|g| g.is_uniform_cycle_type(m)).collect());
    }
    let search = Search { moduli: moduli.clone(), candidates, degree };
    let identity = vec![Permutation::identity(degree)];

    let tuples: Vec<Vec<Permutation>> = if moduli.is_empty() {
        vec![Vec::new()]
    } else {
        let first = &search.candidates[&moduli[0]];
        first
            .par_iter()
            .flat_map_iter(|&x| {
                let mut out = Vec::new();
                if let Some(elems) = search.grow(&identity, x, moduli[0]) {
                    search.extend(&mut vec![x.clone()], &elems, &mut out);
                }
                out
            })
            .collect()
    };

    let mut seen = BTreeSet::new();
    let mut result = Vec::new();
    for gens in tuples {
        let key = sorted_elements(&gens, degree);
        if seen.insert(key) {
            result.push(PermutationGroup::new(degree, gens)?);
        }
    }
    result.sort_by_cached_key(|g| sorted_elements(g.generators(), degree));
    Ok(result)
}

/// The orbit of a subgroup under conjugation by `A`, each member keyed by
/// its sorted element list and paired with a conjugating element.
pub struct ConjugacyClass {
    degree: usize,
    members: HashMap<Vec<Permutation>, Permutation>,
}

impl ConjugacyClass {
    pub fn new(p: &PermutationGroup, a: &PermutationGroup, limits: &Limits) -> Result<Self> {
        Self::search(p, a, limits, None).map(|(class, _)| class)
    }

    fn search(
        p: &PermutationGroup,
        a: &PermutationGroup,
        limits: &Limits,
        target: Option<&Vec<Permutation>>,
    ) -> Result<(Self, Option<Permutation>)> {
        let degree = p.degree();
        let cap = limits.subgroup_search_order;
        let start = p.elements(cap)?;
        let mut members = HashMap::new();
        members.insert(start.clone(), Permutation::identity(degree));
        if target == Some(&start) {
            return Ok((ConjugacyClass { degree, members }, Some(Permutation::identity(degree))));
        }
        let mut queue = VecDeque::from([start]);
        while let Some(key) = queue.pop_front() {
            let c = members[&key].clone();
            for s in a.generators() {
                let mut conj: Vec<Permutation> = key.iter().map(|g| g.conjugate_by(s)).collect();
                conj.sort_unstable();
                if members.contains_key(&conj) {
                    continue;
                }
                let cs = c.then(s);
                if target == Some(&conj) {
                    return Ok((ConjugacyClass { degree, members }, Some(cs)));
                }
                members.insert(conj.clone(), cs);
                if members.len() as u128 > cap {
                    return Err(Error::infeasible("conjugacy class size", cap, members.len() as u128));
                }
                queue.push_back(conj);
            }
        }
        Ok((ConjugacyClass { degree, members }, None))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Some `c` with `c⁻¹ P c = Q`, if `Q` lies in the class.
    pub fn conjugator_to(&self, q: &PermutationGroup, limits: &Limits) -> Result<Option<Permutation>> {
        if q.degree() != self.degree {
            return Ok(None);
        }
        Ok(self.members.get(&q.elements(limits.subgroup_search_order)?).cloned())
    }
}

/// Some `a ∈ A` with `a⁻¹ P a = Q`, verified on generators.
pub fn are_conjugate_subgroups(
    p: &PermutationGroup,
    q: &PermutationGroup,
    a: &PermutationGroup,
    limits: &Limits,
) -> Result<Option<Permutation>> {
    if p.degree() != q.degree() || p.degree() != a.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    if !a.contains_group(p) || !a.contains_group(q) {
        return Err(Error::Precondition("subgroups must lie in the ambient group".into()));
    }
    if p.order() != q.order() {
        return Ok(None);
    }
    let cap = limits.subgroup_search_order;
    if p.order_census(cap)? != q.order_census(cap)? {
        return Ok(None);
    }
    let target = q.elements(cap)?;
    let (_, found) = ConjugacyClass::search(p, a, limits, Some(&target))?;
    if let Some(c) = &found {
        let conj = p.conjugate_by(c);
        debug_assert!(a.contains(c));
        if !q.contains_group(&conj) {
            return Err(Error::Precondition("conjugator failed verification".into()));
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;

    use super::*;

    fn p(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn dihedral4() -> PermutationGroup {
        PermutationGroup::new(4, vec![p(&[1, 2, 3, 0]), p(&[0, 3, 2, 1])]).unwrap()
    }

    #[test]
    fn regular_representations() {
        let l = Limits::default();
        let z3 = right_regular_representation(&FiniteAbelianGroup::cyclic(3).unwrap(), &l).unwrap();
        assert_eq!((z3.degree(), z3.order()), (3, BigUint::from(3u32)));
        let k = right_regular_representation(&FiniteAbelianGroup::elementary(2, 2).unwrap(), &l).unwrap();
        assert_eq!(k.order(), BigUint::from(4u32));
        let elems = k.elements(10).unwrap();
        assert!(elems.iter().filter(|g| !g.is_identity()).all(|g| g.is_fixed_point_free()));
        let z6 = right_regular_representation(&FiniteAbelianGroup::cyclic(6).unwrap(), &l).unwrap();
        assert_eq!(z6.orbits().len(), 1);
        assert!(z6.is_regular_action());
    }

    #[test]
    fn regular_subgroups_of_dihedral_square() {
        let l = Limits::default();
        let d4 = dihedral4();
        let z4 = enumerate_regular_subgroups(&d4, &FiniteAbelianGroup::cyclic(4).unwrap(), &l).unwrap();
        assert_eq!(z4.len(), 1);
        assert!(z4[0].same_group(&PermutationGroup::new(4, vec![p(&[1, 2, 3, 0])]).unwrap()));
        let klein = enumerate_regular_subgroups(&d4, &FiniteAbelianGroup::elementary(2, 2).unwrap(), &l).unwrap();
        assert_eq!(klein.len(), 1);
        let want = PermutationGroup::new(4, vec![p(&[2, 3, 0, 1]), p(&[1, 0, 3, 2])]).unwrap();
        assert!(klein[0].same_group(&want));
        for g in z4.iter().chain(&klein) {
            assert!(g.is_regular_action() && d4.contains_group(g));
        }
    }

    #[test]
    fn cyclic_regular_group_is_its_only_regular_subgroup() {
        let l = Limits::default();
        let z5 = FiniteAbelianGroup::cyclic(5).unwrap();
        let r = right_regular_representation(&z5, &l).unwrap();
        let subs = enumerate_regular_subgroups(&r, &z5, &l).unwrap();
        assert_eq!(subs.len(), 1);
        assert!(subs[0].same_group(&r));
    }

    #[test]
    fn symmetric_group_regular_subgroups() {
        // S4 contains three cyclic regular subgroups and one regular Klein group.
        let l = Limits::default();
        let s4 = PermutationGroup::symmetric(4);
        let z4 = enumerate_regular_subgroups(&s4, &FiniteAbelianGroup::cyclic(4).unwrap(), &l).unwrap();
        assert_eq!(z4.len(), 3);
        let v = enumerate_regular_subgroups(&s4, &FiniteAbelianGroup::elementary(2, 2).unwrap(), &l).unwrap();
        assert_eq!(v.len(), 1);
        let class = ConjugacyClass::new(&z4[0], &s4, &l).unwrap();
        assert_eq!(class.len(), 3);
        for q in &z4 {
            let c = class.conjugator_to(q, &l).unwrap().unwrap();
            assert!(z4[0].conjugate_by(&c).same_group(q));
        }
    }

    #[test]
    fn conjugacy_examples() {
        let l = Limits::default();
        let d4 = dihedral4();
        let rot = PermutationGroup::new(4, vec![p(&[1, 2, 3, 0])]).unwrap();
        assert!(are_conjugate_subgroups(&rot, &rot, &d4, &l).unwrap().unwrap().is_identity());
        let klein = PermutationGroup::new(4, vec![p(&[2, 3, 0, 1]), p(&[1, 0, 3, 2])]).unwrap();
        assert_eq!(are_conjugate_subgroups(&rot, &klein, &d4, &l).unwrap(), None);

        let s3 = PermutationGroup::symmetric(3);
        let st0 = s3.stabilizer(0);
        let st1 = s3.stabilizer(1);
        let c = are_conjugate_subgroups(&st0, &st1, &s3, &l).unwrap().unwrap();
        assert_eq!(c.apply(0), 1);
        assert!(st0.conjugate_by(&c).same_group(&st1));
    }

    #[test]
    fn order_mismatch_rejected() {
        let l = Limits::default();
        let z5 = FiniteAbelianGroup::cyclic(5).unwrap();
        assert!(enumerate_regular_subgroups(&dihedral4(), &z5, &l).is_err());
    }
}
