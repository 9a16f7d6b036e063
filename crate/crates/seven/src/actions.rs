//! Existence and counting of regular circle actions.
//!
//! A manifold admits a regular circle action exactly when it is the total
//! space of a circle bundle over some realizable orbit-space class, summed
//! with an even number of S^3 x S^4 copies. The manifolds arising this way
//! form two explicit families, parametrized here by [`family_homeo`] and
//! [`family_diffeo`]; [`admits_action`] decides membership for an
//! arbitrary descriptor and produces the witnessing class.
//!
//! Counting distinguishes the orbit data, not just existence: two classes
//! theta != theta' count separately even when their total spaces agree.
//! For k = 0 at most two classes can hit a given target (one per value of
//! eps) and the count is exact. For k != 0 the count is always infinite,
//! certified by a shift period P = 5376*|k| = 2^8*3*7*|k|: adding P to p
//! preserves realizability (P is divisible by 24 and 48), shifts ph by
//! P/2 = 2688*|k| = 0 mod k, and moves s1 and mu by integers, because in
//!
//! ```text
//! s1 = -|k|/(8k) + (p+k)^2/(32k) + 7(eps-1)(2p+k)/96
//! mu = -|k|/(224k) + (p+k)^2/(896k) + (eps-1)(2p+k)/384
//! ```
//!
//! the quadratic term changes by P(2p + P + 2k)/(32k) with P/(32k) = +/-168
//! (resp. +/-6 over 896k) and the linear term by multiples of 2P/96 = 112|k|
//! (resp. 2P/384 = 28|k|). So the classes p, p + P, p + 2P, ... are
//! pairwise distinct elements of the orbit-space set with identical
//! invariant systems, and one verified shift certifies infinitude. The
//! same periodicity bounds the search window when deciding membership:
//! a class matching a given target exists iff one exists with p in a
//! single period of its congruence class.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::classify::{classify_diffeo, classify_homeo, ph_equal_up_to_unit, same_invariants};
use crate::error::{Error, Result};
use crate::invariants::{descriptor_invariants, Category, CoreManifold, ManifoldDescriptor};
use crate::theta::{validate_theta, ThetaClass};

/// Number of orbit-space classes whose total space realizes a target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionCount {
    Finite(u64),
    Infinite,
}

impl fmt::Display for ActionCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionCount::Finite(n) => write!(f, "{n}"),
            ActionCount::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for ActionCount {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        match self {
            ActionCount::Finite(n) => {
                let mut s = serializer.serialize_struct("ActionCount", 1)?;
                s.serialize_field("finite", n)?;
                s.end()
            }
            ActionCount::Infinite => serializer.serialize_str("infinite"),
        }
    }
}

/// A witnessing realization: the orbit-space class of the bundle together
/// with the number of S^3 x S^4 summands added to its total space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ActionWitness {
    pub theta: ThetaClass,
    pub rank: u32,
}

/// A count together with the evidence backing it: the first witness in
/// the fixed search order and, for infinite counts, the verified shift
/// period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountCertificate {
    pub count: ActionCount,
    pub witness: ActionWitness,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<i64>,
}

/// The general topological family member: 2r copies of S^3 x S^4 summed
/// with M^c_{6m,(1+c)k}. Every manifold admitting a regular circle action
/// is homeomorphic to exactly the descriptors this produces.
///
/// # Panics
///
/// When c is not 0 or 1, or the parameters leave the supported range.
pub fn family_homeo(r: u32, c: i64, m: i64, k: i64) -> ManifoldDescriptor {
    assert!((0..=1).contains(&c), "c must be 0 or 1");
    let rank = r.checked_mul(2).expect("rank within u32");
    let l = m.checked_mul(6).expect("l = 6m within i64");
    let kk = k.checked_mul(1 + c).expect("(1+c)k within i64");
    let core = CoreManifold::new(l, kk, c).expect("family core within the supported range");
    ManifoldDescriptor::new(rank, core, 0, Category::Top)
        .expect("even rank topological descriptor")
}

/// The general smooth family member: 2r copies of S^3 x S^4 summed with
/// M^0_{6(a+1)m,(a+1)k} # Sigma_{(1-a)m}. Every manifold admitting a
/// regular circle action is diffeomorphic to exactly the descriptors this
/// produces.
///
/// # Panics
///
/// When a is not 0 or 1, or the parameters leave the supported range.
pub fn family_diffeo(r: u32, a: i64, m: i64, k: i64) -> ManifoldDescriptor {
    assert!((0..=1).contains(&a), "a must be 0 or 1");
    let rank = r.checked_mul(2).expect("rank within u32");
    let l = m.checked_mul(6 * (a + 1)).expect("l = 6(a+1)m within i64");
    let kk = k.checked_mul(a + 1).expect("(a+1)k within i64");
    let exotic = (1 - a) * (m % 28);
    let core = CoreManifold::new(l, kk, 0).expect("family core within the supported range");
    ManifoldDescriptor::new(rank, core, exotic, Category::Diff)
        .expect("even rank smooth descriptor")
}

/// Whether the total space of `theta`, summed with `target.rank()` copies
/// of S^3 x S^4, is the manifold described by `target`.
fn total_space_matches(theta: &ThetaClass, target: &ManifoldDescriptor) -> bool {
    let classified = match target.category() {
        Category::Top => classify_homeo(theta).descriptor,
        Category::Diff => match classify_diffeo(theta) {
            Ok(res) => res.descriptor,
            Err(_) => return false,
        },
    };
    let candidate = ManifoldDescriptor::new(
        target.rank(),
        classified.core(),
        classified.exotic() as i64,
        target.category(),
    )
    .expect("classified core with an even rank is a valid descriptor");
    same_invariants(&candidate, target).expect("categories agree by construction")
}

/// The (k', eps, delta) branches a nonzero-torsion target must be checked
/// against: both signs of k, both spin types where the parity allows, and
/// both smoothing flags in the topological category. For odd k' the value
/// of delta changes neither the classification nor the invariants, so the
/// delta = 1 branch would only repeat the delta = 0 one.
fn branch_list(k: i64, category: Category) -> Vec<(i64, u8, u8)> {
    let mut out = Vec::new();
    for k2 in [k, -k] {
        for eps in [0u8, 1] {
            if eps == 1 && k2 % 2 != 0 {
                continue;
            }
            for delta in [0u8, 1] {
                if delta == 1 && (category == Category::Diff || k2 % 2 != 0) {
                    continue;
                }
                out.push((k2, eps, delta));
            }
        }
    }
    out
}

/// p-step and base residue of the realizable classes on a branch.
fn branch_progression(k2: i64, eps: u8, delta: u8) -> (i64, i64) {
    let step = if eps == 0 { 24 } else { 48 };
    let class = if eps == 0 { 4 * k2 + 24 * delta as i64 } else { k2 + 24 * delta as i64 };
    (step, class.rem_euclid(step))
}

/// The at most two orbit-space classes realizing a torsion-free target:
/// p is pinned to 4l + 24c and only eps remains free, with eps = 0
/// requiring 6 | l and eps = 1 requiring 12 | l.
fn torsion_free_witnesses(target: &ManifoldDescriptor) -> Vec<ThetaClass> {
    let l = target.core().l();
    let c = target.core().c() as i64;
    let p = match l.checked_mul(4).and_then(|v| v.checked_add(24 * c)) {
        Some(p) => p,
        None => return Vec::new(),
    };
    let mut out = Vec::new();
    for eps in [0, 1] {
        if let Ok(theta) = validate_theta(0, p, eps, c) {
            if total_space_matches(&theta, target) {
                out.push(theta);
            }
        }
    }
    out
}

/// Decides whether the described manifold admits a regular circle action,
/// returning the first witnessing realization in a fixed deterministic
/// search order (nothing about the witness is canonical).
///
/// For nonzero k each branch is first probed by direct inversion of the
/// classification formula (which instantly covers every family member)
/// and then, for targets that only match under a change of generator or
/// a sign flip elsewhere in their period, by sweeping one full period of
/// the branch's congruence class. Periodicity of the invariants makes
/// that sweep exhaustive: no witness exists outside a window none exists
/// inside.
pub fn admits_action(target: &ManifoldDescriptor) -> Option<ActionWitness> {
    let rank = target.rank();
    let k = target.core().k();
    if k == 0 {
        let theta = *torsion_free_witnesses(target).first()?;
        return Some(ActionWitness { theta, rank });
    }

    let branches = branch_list(k, target.category());
    let l = target.core().l();

    for &(k2, eps, delta) in &branches {
        // l = (p + (3 eps - 4) k' - 24 delta [k' even]) / 4, inverted for p.
        let shift = if k2 % 2 == 0 { 24 * delta as i128 } else { 0 };
        let p = 4 * l as i128 + (4 - 3 * eps as i128) * k2 as i128 + shift;
        let Ok(p) = i64::try_from(p) else { continue };
        if let Ok(theta) = validate_theta(k2, p, eps as i64, delta as i64) {
            if total_space_matches(&theta, target) {
                return Some(ActionWitness { theta, rank });
            }
        }
    }

    for &(k2, eps, delta) in &branches {
        let (step, base) = branch_progression(k2, eps, delta);
        let period = 5376 * k2.abs();
        let mut p = base;
        while p < base + period {
            let theta = ThetaClass::assemble(k2, p, eps, delta);
            if total_space_matches(&theta, target) {
                return Some(ActionWitness { theta, rank });
            }
            p += step;
        }
    }
    None
}

/// Counts the orbit-space classes realizing the target, with evidence.
///
/// Torsion-free targets have an exact finite count (1 when only 6 | l,
/// 2 when 12 | l, both checked directly). Targets with torsion either
/// admit no action at all or are realized by infinitely many classes;
/// in the latter case the certificate carries the verified shift period.
pub fn count_actions_certified(target: &ManifoldDescriptor) -> Result<CountCertificate> {
    let rank = target.rank();
    let k = target.core().k();
    if k == 0 {
        let witnesses = torsion_free_witnesses(target);
        let first = *witnesses.first().ok_or(Error::NotInAdmittingFamily)?;
        return Ok(CountCertificate {
            count: ActionCount::Finite(witnesses.len() as u64),
            witness: ActionWitness { theta: first, rank },
            period: None,
        });
    }

    let witness = admits_action(target).ok_or(Error::NotInAdmittingFamily)?;
    let period = 5376 * k.abs();
    let theta = witness.theta;
    let shifted = ThetaClass::assemble(
        theta.k(),
        theta.p().checked_add(period).expect("one period above a witness stays within i64"),
        theta.eps(),
        theta.delta(),
    );
    assert!(
        total_space_matches(&shifted, target),
        "period-shifted class must classify to the same target"
    );
    Ok(CountCertificate { count: ActionCount::Infinite, witness, period: Some(period) })
}

/// Counts the orbit-space classes realizing the target. See
/// [`count_actions_certified`] for the evidence-carrying version.
pub fn count_actions(target: &ManifoldDescriptor) -> Result<ActionCount> {
    count_actions_certified(target).map(|cert| cert.count)
}

/// The r for which the connected sum of r exotic 7-spheres (equivalently,
/// S^7 # Sigma_r) admits a regular circle action: the homotopy 7-spheres
/// among circle-bundle total spaces are exactly the M^0_{6m,k} with
/// |k| = 1, and their mu invariants sweep out these residues mod 28.
pub fn sphere_action_set() -> BTreeSet<u8> {
    let mut out = BTreeSet::new();
    for k in [1i64, -1] {
        for m in 0..28 {
            let theta = validate_theta(k, 24 * m + 4 * k, 0, 0)
                .expect("p = 4k + 24m is always realizable");
            let res = classify_diffeo(&theta).expect("delta = 0 classes are smooth");
            let mu = descriptor_invariants(&res.descriptor)
                .expect("smooth descriptor")
                .mu
                .expect("mu is defined for |k| = 1");
            let r = mu.numerator_over(28).expect("mu of a homotopy sphere is a multiple of 1/28");
            out.insert(r as u8);
        }
    }
    out
}

/// The r for which the unit tangent bundle of S^4, which is the model
/// core M^0_{-1,2}, still admits a regular circle action after connected
/// sum with r exotic 7-spheres.
///
/// A class (k', p, eps, 0) with |k'| = 2 realizes M^0_{-1,2} # Sigma_r
/// exactly when its total space matches the core in the topological
/// invariant system (ks, linking, s1, ph up to unit); the residual
/// difference of mu invariants is then a whole number of 28ths, and that
/// number is r. One period of each branch exhausts the possibilities.
pub fn tangent_bundle_action_set() -> BTreeSet<u8> {
    let target_core = CoreManifold::new(-1, 2, 0).expect("core within range");
    let target = descriptor_invariants(
        &ManifoldDescriptor::new(0, target_core, 0, Category::Diff).expect("valid descriptor"),
    )
    .expect("smooth core invariants");
    let target_mu = target.mu.as_ref().expect("mu defined for k = 2");

    let mut out = BTreeSet::new();
    for k2 in [2i64, -2] {
        for eps in [0u8, 1] {
            let (step, base) = branch_progression(k2, eps, 0);
            let period = 5376 * 2;
            let mut p = base;
            while p < base + period {
                let theta = validate_theta(k2, p, eps as i64, 0).expect("congruence holds");
                let res = classify_diffeo(&theta).expect("delta = 0");
                let cand = descriptor_invariants(&res.descriptor).expect("smooth descriptor");
                if cand.ks == target.ks
                    && cand.linking == target.linking
                    && cand.s1 == target.s1
                    && ph_equal_up_to_unit(2, target.ph.value(), cand.ph.value())
                {
                    let gap = cand.mu.as_ref().expect("mu defined for |k| = 2") - target_mu;
                    let r = gap
                        .numerator_over(28)
                        .expect("equal s1 forces the mu gap into 28ths");
                    out.insert(r as u8);
                }
                p += step;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn smooth(rank: u32, l: i64, k: i64, exotic: i64) -> ManifoldDescriptor {
        let core = CoreManifold::new(l, k, 0).unwrap();
        ManifoldDescriptor::new(rank, core, exotic, Category::Diff).unwrap()
    }

    fn quad(theta: &ThetaClass) -> (i64, i64, u8, u8) {
        (theta.k(), theta.p(), theta.eps(), theta.delta())
    }

    #[test]
    fn family_members_have_the_advertised_shape() {
        let d = family_homeo(1, 0, 1, 1);
        assert_eq!(d.to_string(), "2(S3xS4) # M^0_{6,1} [TOP]");
        let d = family_homeo(0, 1, 0, 3);
        assert_eq!(d.to_string(), "M^1_{0,6} [TOP]");
        let d = family_diffeo(0, 1, 1, 1);
        assert_eq!(d.to_string(), "M^0_{12,2} [DIFF]");
        let d = family_diffeo(0, 0, 3, 5);
        assert_eq!(d.to_string(), "M^0_{18,5} # Sigma_3 [DIFF]");
        let d = family_diffeo(2, 0, -1, 2);
        assert_eq!(d.to_string(), "4(S3xS4) # M^0_{-6,2} # Sigma_27 [DIFF]");
    }

    #[test]
    fn every_small_family_member_admits_an_action() {
        for r in 0..2u32 {
            for m in -3..=3 {
                for k in -3..=3 {
                    for c in 0..=1 {
                        let d = family_homeo(r, c, m, k);
                        assert!(admits_action(&d).is_some(), "{d}");
                    }
                    for a in 0..=1 {
                        let d = family_diffeo(r, a, m, k);
                        assert!(admits_action(&d).is_some(), "{d}");
                    }
                }
            }
        }
    }

    #[test]
    fn witnesses_actually_classify_to_their_target() {
        for (r, a, m, k) in [(0, 0, 2, 3), (1, 1, -1, 2), (2, 0, 5, -4), (0, 1, 0, 7)] {
            let d = family_diffeo(r, a, m, k);
            let w = admits_action(&d).unwrap();
            assert_eq!(w.rank, d.rank());
            assert!(total_space_matches(&w.theta, &d), "{d} via {}", w.theta);
        }
    }

    #[test]
    fn non_members_are_rejected() {
        // mu(M^0_{1,1}) = 1/28, the generating exotic sphere: r = 1 is not
        // an achievable residue, so no action exists.
        assert_eq!(admits_action(&smooth(0, 1, 1, 0)), None);
        assert_eq!(admits_action(&smooth(0, 0, 1, 1)), None);
        // Torsion-free cores need 6 | l.
        assert_eq!(admits_action(&smooth(0, 2, 0, 0)), None);
        assert_eq!(count_actions(&smooth(0, 2, 0, 0)), Err(Error::NotInAdmittingFamily));
    }

    #[test]
    fn counts_at_k_zero_depend_on_divisibility_of_l() {
        // l = 6: only the eps = 0 class matches; l = 12: both spin types.
        assert_eq!(count_actions(&smooth(0, 6, 0, 0)), Ok(ActionCount::Finite(1)));
        assert_eq!(count_actions(&smooth(0, 12, 0, 0)), Ok(ActionCount::Finite(2)));
        assert_eq!(count_actions(&smooth(4, -12, 0, 0)), Ok(ActionCount::Finite(2)));
        // Exotic summands are absorbed by the torsion-free core.
        assert_eq!(count_actions(&smooth(0, 6, 0, 13)), Ok(ActionCount::Finite(1)));

        let top = |l: i64, c: i64| {
            let core = CoreManifold::new(l, 0, c).unwrap();
            ManifoldDescriptor::new(0, core, 0, Category::Top).unwrap()
        };
        assert_eq!(count_actions(&top(6, 1)), Ok(ActionCount::Finite(1)));
        assert_eq!(count_actions(&top(-24, 1)), Ok(ActionCount::Finite(2)));
    }

    #[test]
    fn torsion_targets_count_infinitely_with_a_verified_period() {
        let cert = count_actions_certified(&smooth(0, 0, 2, 0)).unwrap();
        assert_eq!(cert.count, ActionCount::Infinite);
        assert_eq!(quad(&cert.witness.theta), (2, 8, 0, 0));
        assert_eq!(cert.period, Some(10752));

        let cert = count_actions_certified(&family_diffeo(1, 0, 2, -3)).unwrap();
        assert_eq!(cert.count, ActionCount::Infinite);
        assert_eq!(cert.period, Some(5376 * 3));
        assert_eq!(cert.witness.rank, 2);
    }

    #[test]
    fn sphere_summands_admitting_actions_are_pinned() {
        let got: Vec<u8> = sphere_action_set().into_iter().collect();
        assert_eq!(got, vec![0, 4, 6, 8, 10, 14, 18, 20, 22, 24]);
    }

    #[test]
    fn sphere_set_is_symmetric_under_negation() {
        let set = sphere_action_set();
        for &r in &set {
            assert!(set.contains(&((28 - r) % 28)), "r = {r}");
        }
    }

    #[test]
    fn tangent_bundle_summands_admitting_actions_are_pinned() {
        let got: Vec<u8> = tangent_bundle_action_set().into_iter().collect();
        assert_eq!(got, vec![0, 2, 7, 8, 12, 14, 15, 16, 19, 22, 23, 26]);
    }

    #[test]
    fn tangent_set_agrees_with_the_general_membership_test() {
        let set = tangent_bundle_action_set();
        for r in 0..28 {
            let d = smooth(0, -1, 2, r);
            assert_eq!(
                admits_action(&d).is_some(),
                set.contains(&(r as u8)),
                "Sigma_{r} summand"
            );
        }
    }

    #[test]
    fn sphere_set_agrees_with_the_general_membership_test() {
        let set = sphere_action_set();
        for r in 0..28 {
            let d = smooth(0, 0, 1, r);
            assert_eq!(
                admits_action(&d).is_some(),
                set.contains(&(r as u8)),
                "Sigma_{r} summand"
            );
        }
    }

    #[test]
    fn json_shapes_for_counting() {
        let cert = count_actions_certified(&smooth(0, 0, 2, 0)).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        assert_eq!(
            json,
            r#"{"count":"infinite","witness":{"theta":{"k":2,"p":8,"eps":0,"delta":0},"rank":0},"period":10752}"#
        );
        let cert = count_actions_certified(&smooth(0, 6, 0, 0)).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        assert_eq!(
            json,
            r#"{"count":{"finite":1},"witness":{"theta":{"k":0,"p":24,"eps":0,"delta":0},"rank":0}}"#
        );
    }
}
