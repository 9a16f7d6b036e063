//! Invariant systems, classification, and circle-action counting for
//! closed 2-connected 7-manifolds.
//!
//! A regular circle action on such a manifold N is a smooth free action
//! whose orbit space is again a manifold; equivalently N is the total
//! space of a principal circle bundle over a simply connected 6-manifold.
//! The realizable orbit data reduce to quadruples theta = (k, p, eps,
//! delta) subject to explicit congruences, and the total space attached
//! to theta is determined up to homeomorphism or diffeomorphism by a
//! small exact invariant system: the torsion coefficient k of H^4, the
//! spin characteristic residue ph mod k, the self-linking value 1/k in
//! Q/Z, the Kirby-Siebenmann flag, and the Eells-Kuiper style invariants
//! s1 and mu in Q/Z with 28 mu = s1.
//!
//! The crate computes those invariants by exact integer arithmetic (no
//! floating point anywhere), classifies total spaces against the model
//! family M^c_{l,k} # Sigma_r, decides whether an arbitrary descriptor
//! admits a regular circle action, and counts the orbit-space classes
//! realizing it, producing verifiable certificates for infinite counts.
//!
//! ```
//! use seven::{classify_diffeo, count_actions, validate_theta, ActionCount};
//!
//! let theta = validate_theta(1, 28, 0, 0)?;
//! let result = classify_diffeo(&theta)?;
//! assert_eq!(result.descriptor.to_string(), "M^0_{6,1} # Sigma_1 [DIFF]");
//!
//! // The same manifold is hit by infinitely many orbit-space classes.
//! assert_eq!(count_actions(&result.descriptor)?, ActionCount::Infinite);
//! # Ok::<(), seven::Error>(())
//! ```

#![forbid(unsafe_code)]

pub mod actions;
pub mod classify;
mod error;
pub mod exact;
pub mod invariants;
pub mod theta;

pub use actions::{
    admits_action, count_actions, count_actions_certified, family_diffeo, family_homeo,
    sphere_action_set, tangent_bundle_action_set, ActionCount, ActionWitness, CountCertificate,
};
pub use classify::{classify_diffeo, classify_homeo, same_invariants, ClassificationResult};
pub use error::{Error, Result};
pub use exact::{ratmodz_add, ratmodz_normalize, residue_reduce, RatModZ, ResidueModK};
pub use invariants::{
    circle_bundle_invariants, core_invariants, descriptor_invariants, exotic_mu, Category,
    CoreManifold, InvariantTuple, ManifoldDescriptor,
};
pub use theta::{enumerate_theta, validate_theta, ThetaClass};

/// Input caps keeping every derived quantity representable: linear
/// expressions in the parameters are evaluated in 128-bit integers and
/// all squares in big integers, so the caps exist only to bound what the
/// i64-valued accessors (classified l, residues over Z, certificate
/// periods) can be asked to carry.
pub(crate) const K_LIMIT: i64 = 1 << 40;
pub(crate) const P_LIMIT: i64 = 1 << 48;
pub(crate) const L_LIMIT: i64 = 1 << 44;
