//! Computational checks of the structural facts behind the hat construction:
//! the maximal cliques of `X̂`, the same-out-neighbour lemma, and the
//! restriction of identity-fixing automorphisms of `X̂` to `G`.

mod cliques;
mod outneighbour;
mod restriction;

pub use cliques::{
    classify_clique, clique_extensions, maximal_cliques, verify_clique_lemma, CensusRow, CliqueClassification,
    CliqueKind, CliqueMode, CliqueReport,
};
pub use outneighbour::{
    check_outneighbour, same_outneighbour_classes, verify_outneighbour_lemma, IdentityFreeViolation,
    OutneighbourCase, OutneighbourReport,
};
pub use restriction::{
    restrict_automorphism, verify_lift_containment, verify_phi_lemma, LiftReport, PhiReport, RestrictionVerdict,
};
