use rayon::prelude::*;
use serde::Serialize;

use crate::canon;
use crate::error::{Error, Result};
use crate::hat::{lift_automorphism, HatConstruction};
use crate::limits::Limits;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionVerdict {
    pub fixes_identity: bool,
    pub preserves_g_cosets: bool,
    pub preserves_ab_cosets: bool,
    /// `φ` on `G`, present when both coset systems are preserved.
    pub restriction: Option<Vec<usize>>,
    /// `+1`: automorphism of `X`; `-1`: isomorphism `X → X⁻`.
    pub orientation: Option<i8>,
}

impl RestrictionVerdict {
    /// False only when the hypotheses hold and neither orientation fits.
    pub fn consistent(&self) -> bool {
        !(self.fixes_identity && self.preserves_g_cosets && self.preserves_ab_cosets) || self.orientation.is_some()
    }
}

fn is_hat_automorphism(phi: &Permutation, hat: &HatConstruction) -> bool {
    phi.degree() == hat.vertex_count() && hat.hat_graph().is_automorphism(phi)
}

fn preserves_g_cosets(phi: &Permutation, hat: &HatConstruction) -> bool {
    let n = hat.n() as usize;
    (0..n * n).all(|av| {
        let (a, v) = (av / n, av % n);
        let mut image: Vec<usize> = hat.g_coset(hat.join(0, a, v)).iter().map(|&y| phi.apply(y)).collect();
        image.sort_unstable();
        image == hat.g_coset(image[0])
    })
}

fn preserves_ab_cosets(phi: &Permutation, hat: &HatConstruction) -> bool {
    let n = hat.n() as usize;
    (0..hat.base_group().order()).all(|g| {
        let first = hat.split(phi.apply(hat.join(g, 0, 0))).0;
        (0..n * n).all(|av| hat.split(phi.apply(hat.join(g, av / n, av % n))).0 == first)
    })
}

/// Checks the coset hypotheses for `φ` and, when they hold, whether `φ|_G`
/// is an automorphism of `X` or an isomorphism onto `X⁻`.
pub fn restrict_automorphism(phi: &Permutation, hat: &HatConstruction) -> Result<RestrictionVerdict> {
    if !is_hat_automorphism(phi, hat) {
        return Err(Error::NotAnAutomorphism("permutation is not an automorphism of the hat graph".into()));
    }
    if phi.apply(0) != 0 {
        return Err(Error::Precondition("automorphism does not fix the identity vertex".into()));
    }
    let mut verdict = RestrictionVerdict {
        fixes_identity: true,
        preserves_g_cosets: preserves_g_cosets(phi, hat),
        preserves_ab_cosets: preserves_ab_cosets(phi, hat),
        restriction: None,
        orientation: None,
    };
    if !(verdict.preserves_g_cosets && verdict.preserves_ab_cosets) {
        return Ok(verdict);
    }
    let order = hat.base_group().order();
    let images: Vec<usize> = (0..order)
        .map(|g| {
            let (h, a, v) = hat.split(phi.apply(hat.join(g, 0, 0)));
            debug_assert_eq!((a, v), (0, 0));
            h
        })
        .collect();
    let r = Permutation::from_usize(&images)?;
    let x = hat.base_digraph();
    verdict.orientation = if x.is_automorphism(&r) {
        Some(1)
    } else if is_isomorphism_to_reverse(&x, &r) {
        Some(-1)
    } else {
        None
    };
    verdict.restriction = Some(images);
    Ok(verdict)
}

fn is_isomorphism_to_reverse(x: &crate::cayley::CayleyDigraph, r: &Permutation) -> bool {
    let rev = x.reverse();
    let g = x.group();
    (0..x.order()).all(|u| x.connection_set().indices().iter().all(|&s| rev.has_arc(r.apply(u), r.apply(g.add_idx(u, s)))))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhiReport {
    pub vertices: usize,
    pub aut_order: String,
    pub stabilizer_order: String,
    pub checked: usize,
    pub orientation_plus: usize,
    pub orientation_minus: usize,
    /// Stabilizer elements breaking a coset system or the restriction.
    pub failures: Vec<Vec<usize>>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }
}

/// Every automorphism of `X̂` fixing the identity vertex satisfies the coset
/// hypotheses and restricts to `G` with a definite orientation.
pub fn verify_phi_lemma(hat: &HatConstruction, limits: &Limits) -> Result<PhiReport> {
    let g_order = hat.base_group().order();
    let nk = (hat.n() * hat.k()) as usize;
    if nk == g_order {
        return Err(Error::Precondition(format!("nk = |G| = {g_order}")));
    }
    if hat.k() as usize * hat.base_set().len() > g_order + 1 {
        return Err(Error::Precondition(format!("k|S| = {} exceeds |G| + 1", hat.k() as usize * hat.base_set().len())));
    }
    let dense = hat.hat_graph().to_digraph(limits)?;
    let aut = canon::automorphism_group(&dense, limits)?;
    let stab = aut.stabilizer(0);
    let elements = stab.elements(limits.enumeration_order as u128)?;
    let verdicts: Vec<(Vec<usize>, Option<i8>, bool)> = elements
        .par_iter()
        .map(|phi| {
            let v = restrict_automorphism(phi, hat).expect("stabilizer element of the automorphism group");
            let ok = v.preserves_g_cosets && v.preserves_ab_cosets && v.orientation.is_some();
            (phi.to_usize(), v.orientation, ok)
        })
        .collect();
    Ok(PhiReport {
        vertices: hat.vertex_count(),
        aut_order: aut.order().to_string(),
        stabilizer_order: stab.order().to_string(),
        checked: verdicts.len(),
        orientation_plus: verdicts.iter().filter(|v| v.1 == Some(1)).count(),
        orientation_minus: verdicts.iter().filter(|v| v.1 == Some(-1)).count(),
        failures: verdicts.into_iter().filter(|v| !v.2).map(|v| v.0).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub base_aut_order: usize,
    pub lifts_checked: usize,
    pub failures: usize,
}

/// Every lift of `Aut(X) × A × B` is an automorphism of `X̂`.
pub fn verify_lift_containment(hat: &HatConstruction, limits: &Limits) -> Result<LiftReport> {
    let base = hat.base_digraph().to_digraph(limits)?;
    let aut = canon::automorphism_group(&base, limits)?;
    let elements = aut.elements(limits.enumeration_order as u128)?;
    let n = hat.n();
    let pairs: Vec<(usize, u32, u32)> =
        (0..elements.len()).flat_map(|i| (0..n).flat_map(move |a| (0..n).map(move |b| (i, a, b)))).collect();
    let failures = pairs
        .par_iter()
        .filter(|&&(i, a, b)| {
            !lift_automorphism(&elements[i], a, b, hat).is_ok_and(|lift| is_hat_automorphism(&lift, hat))
        })
        .count();
    Ok(LiftReport { base_aut_order: elements.len(), lifts_checked: pairs.len(), failures })
}
