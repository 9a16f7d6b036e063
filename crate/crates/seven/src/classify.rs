//! Classification of circle-bundle total spaces against the model family.
//!
//! Every realizable orbit-space class (k, p, eps, delta) has a total space
//! homeomorphic to M^c_{l,k}, and when delta = 0 diffeomorphic to
//! M^0_{l,k} # Sigma_r, with closed formulas for c, l and r in terms of
//! the class. The congruences enforced by validation make the divisions
//! below exact; that integrality is asserted, not assumed. Comparison of
//! two descriptors as abstract manifolds goes through their invariant
//! systems, with the one non-obvious step that the residue ph is only
//! well defined up to a linking-preserving change of generator of Z/k,
//! i.e. up to multiplication by a unit a with a^2 = 1 mod k.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{descriptor_invariants, Category, CoreManifold, ManifoldDescriptor};
use crate::theta::ThetaClass;

/// Outcome of classifying a total space: the model descriptor, the integer
/// m with l = 6m locating it inside the family, and the exotic-sphere
/// count before reduction mod 28 and before any absorption by a
/// torsion-free core (always 0 in the topological category).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub descriptor: ManifoldDescriptor,
    pub witness_m: i64,
    pub exotic_raw: i64,
}

fn core_parameters(theta: &ThetaClass) -> (i64, i64) {
    let k = theta.k();
    let p = theta.p();
    let eps = theta.eps() as i128;
    let delta = theta.delta() as i128;
    let smoothing_shift = if k % 2 == 0 { 24 * delta } else { 0 };
    let numerator = p as i128 + (3 * eps - 4) * k as i128 - smoothing_shift;
    assert_eq!(numerator % 4, 0, "realizability congruence makes l integral");
    let l = numerator / 4;
    assert_eq!(l % 6, 0, "realizability congruence makes l a multiple of 6");
    (l as i64, (l / 6) as i64)
}

/// The homeomorphism type of the total space of the circle bundle encoded
/// by `theta`: M^c_{l,k} with
///
/// ```text
/// c = delta for even k (0 for odd k),
/// l = (p + (3*eps - 4)*k - 24*delta*[k even]) / 4.
/// ```
pub fn classify_homeo(theta: &ThetaClass) -> ClassificationResult {
    let k = theta.k();
    let c = if k % 2 == 0 { theta.delta() } else { 0 };
    let (l, witness_m) = core_parameters(theta);
    let core = CoreManifold::from_classification(l, k, c);
    let descriptor = ManifoldDescriptor::new(0, core, 0, Category::Top)
        .expect("rank 0 topological descriptor is always valid");
    ClassificationResult { descriptor, witness_m, exotic_raw: 0 }
}

/// The diffeomorphism type of the total space: M^0_{l,k} # Sigma_r with
///
/// ```text
/// l = (p + (3*eps - 4)*k) / 4,
/// r = (1 - eps)*(p - 4k) / 24,
/// ```
///
/// defined only for delta = 0 (other classes have non-smoothable total
/// spaces). When k = 0 the exotic summand is absorbed by the core, so the
/// descriptor carries exotic = 0 while `exotic_raw` keeps the nominal
/// count from the formula.
pub fn classify_diffeo(theta: &ThetaClass) -> Result<ClassificationResult> {
    if theta.delta() != 0 {
        return Err(Error::DeltaMustBeZero);
    }
    let k = theta.k();
    let p = theta.p();
    let (l, witness_m) = core_parameters(theta);

    let exotic_numerator = (1 - theta.eps() as i128) * (p as i128 - 4 * k as i128);
    assert_eq!(exotic_numerator % 24, 0, "realizability congruence makes r integral");
    let exotic_raw = (exotic_numerator / 24) as i64;
    let exotic = if k == 0 { 0 } else { exotic_raw };

    let core = CoreManifold::from_classification(l, k, 0);
    let descriptor = ManifoldDescriptor::new(0, core, exotic, Category::Diff)
        .expect("rank 0 smooth descriptor with a c = 0 core is always valid");
    Ok(ClassificationResult { descriptor, witness_m, exotic_raw })
}

/// Whether multiplying by some unit a with a^2 = 1 (mod k) carries the
/// residue `from` to the residue `to`. Such units are exactly the changes
/// of generator of Z/k that preserve the linking value 1/k.
pub(crate) fn ph_equal_up_to_unit(k_abs: u64, to: i64, from: i64) -> bool {
    let k = k_abs as i128;
    let (to, from) = (to as i128, from as i128);
    (1..=k_abs).any(|a| {
        let a = a as i128;
        (a * a - 1).rem_euclid(k) == 0 && (a * from - to).rem_euclid(k) == 0
    })
}

/// Whether two descriptors in the same category describe the same
/// manifold, decided entirely through the invariant system.
///
/// For k != 0 the comparison checks the free rank, |k|, the
/// Kirby-Siebenmann class, the linking value, the category's Eells-Kuiper
/// invariant (s1 topologically, mu smoothly, the latter including exotic
/// summands), and ph up to a linking-preserving change of generator.
///
/// For k = 0 the invariant system degenerates (all rational invariants
/// are undefined) and the normal forms themselves are compared: same l
/// and same c, with exotic summands ignored because a torsion-free core
/// absorbs them.
pub fn same_invariants(a: &ManifoldDescriptor, b: &ManifoldDescriptor) -> Result<bool> {
    if a.category() != b.category() {
        return Err(Error::CategoryMismatch);
    }
    if a.rank() != b.rank() {
        return Ok(false);
    }
    let (ka, kb) = (a.core().k(), b.core().k());
    if ka == 0 || kb == 0 {
        return Ok(ka == kb && a.core().l() == b.core().l() && a.core().c() == b.core().c());
    }
    if ka.unsigned_abs() != kb.unsigned_abs() {
        return Ok(false);
    }
    let ta = descriptor_invariants(a)?;
    let tb = descriptor_invariants(b)?;
    if ta.ks != tb.ks || ta.linking != tb.linking {
        return Ok(false);
    }
    let primary_equal = match a.category() {
        Category::Top => ta.s1 == tb.s1,
        Category::Diff => ta.mu == tb.mu,
    };
    if !primary_equal {
        return Ok(false);
    }
    Ok(ph_equal_up_to_unit(ka.unsigned_abs(), ta.ph.value(), tb.ph.value()))
}
