//! Orbit-space classes for regular circle actions, validated against the
//! realizability congruences.
//!
//! A class is a quadruple (k, p, eps, delta): k is the self-intersection
//! coefficient of the distinguished 4-class of the simply connected
//! 6-dimensional orbit space, p the coefficient of its first Pontrjagin
//! class, eps records whether the second Stiefel-Whitney class is carried
//! by the distinguished generator, and delta is the Kirby-Siebenmann
//! smoothing obstruction. Not every quadruple occurs: k and p are tied by
//! an index-theoretic congruence on the orbit space, and odd k forces
//! eps = 0. [`validate_theta`] is the only way to build a
//! [`ThetaClass`], so a value of that type is always realizable.

use std::fmt;
use std::ops::RangeInclusive;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::{K_LIMIT, P_LIMIT};

/// A realizable orbit-space class (k, p, eps, delta). Only obtainable
/// through [`validate_theta`], which enforces the congruences below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ThetaClass {
    k: i64,
    p: i64,
    eps: u8,
    delta: u8,
}

impl ThetaClass {
    /// Assembles a class whose congruences hold by construction, skipping
    /// the input range guards. Used for period-shifted classes in counting
    /// certificates, where p can legitimately exceed the cap imposed on
    /// user input; all downstream arithmetic widens to 128-bit or big
    /// integers, so any i64 value of p is safe to carry.
    pub(crate) fn assemble(k: i64, p: i64, eps: u8, delta: u8) -> ThetaClass {
        debug_assert!(eps <= 1 && delta <= 1);
        debug_assert!(eps == 0 || k % 2 == 0);
        debug_assert_eq!(
            (p as i128 - k as i128 * if eps == 0 { 4 } else { 1 } - 24 * delta as i128)
                .rem_euclid(if eps == 0 { 24 } else { 48 }),
            0,
            "assembled class must satisfy the realizability congruence"
        );
        ThetaClass { k, p, eps, delta }
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn eps(&self) -> u8 {
        self.eps
    }

    pub fn delta(&self) -> u8 {
        self.delta
    }
}

impl fmt::Display for ThetaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(k={}, p={}, eps={}, delta={})", self.k, self.p, self.eps, self.delta)
    }
}

impl<'de> Deserialize<'de> for ThetaClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            k: i64,
            p: i64,
            eps: i64,
            delta: i64,
        }
        let raw = Raw::deserialize(deserializer)?;
        validate_theta(raw.k, raw.p, raw.eps, raw.delta).map_err(serde::de::Error::custom)
    }
}

/// Checks that (k, p, eps, delta) is a realizable orbit-space class and
/// wraps it.
///
/// The realizability conditions, with eps and delta restricted to 0 or 1:
///
/// * odd k forces eps = 0;
/// * for eps = 0 (any k) there must be an integer m with
///   p = 4k + 24(m + delta), i.e. p = 4k + 24*delta (mod 24);
/// * for even k with eps = 1 there must be an integer m with
///   p = k + 24(2m + delta), i.e. p = k + 24*delta (mod 48).
///
/// Both |k| and |p| are additionally capped (see the crate root) so that
/// every quantity derived downstream fits comfortably in fixed-width
/// integers.
pub fn validate_theta(k: i64, p: i64, eps: i64, delta: i64) -> Result<ThetaClass> {
    if !(0..=1).contains(&eps) {
        return Err(Error::NotAFlag("eps"));
    }
    if !(0..=1).contains(&delta) {
        return Err(Error::NotAFlag("delta"));
    }
    if k.unsigned_abs() > K_LIMIT as u64 {
        return Err(Error::OutOfRange("k"));
    }
    if p.unsigned_abs() > P_LIMIT as u64 {
        return Err(Error::OutOfRange("p"));
    }
    if k % 2 != 0 && eps == 1 {
        return Err(Error::OddKForcesEpsZero);
    }
    let residue = p as i128 - k as i128 * if eps == 0 { 4 } else { 1 } - 24 * delta as i128;
    let modulus = if eps == 0 { 24 } else { 48 };
    if residue.rem_euclid(modulus) != 0 {
        return Err(Error::CongruenceViolated { modulus: modulus as i64 });
    }
    Ok(ThetaClass { k, p, eps: eps as u8, delta: delta as u8 })
}

/// All realizable classes with k and p in the given inclusive ranges,
/// ordered lexicographically by (k, p, eps, delta).
pub fn enumerate_theta(
    k_range: RangeInclusive<i64>,
    p_range: RangeInclusive<i64>,
) -> Vec<ThetaClass> {
    let mut out = Vec::new();
    for k in k_range {
        for p in p_range.clone() {
            for (eps, delta) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                if let Ok(theta) = validate_theta(k, p, eps, delta) {
                    out.push(theta);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(theta: &ThetaClass) -> (i64, i64, u8, u8) {
        (theta.k(), theta.p(), theta.eps(), theta.delta())
    }

    #[test]
    fn accepts_classes_satisfying_the_congruences() {
        assert!(validate_theta(1, 4, 0, 0).is_ok());
        assert!(validate_theta(1, 4, 0, 1).is_ok());
        assert!(validate_theta(2, 2, 1, 0).is_ok());
        assert!(validate_theta(2, 26, 1, 1).is_ok());
        assert!(validate_theta(0, 24, 0, 0).is_ok());
        assert!(validate_theta(0, 0, 1, 0).is_ok());
        assert!(validate_theta(-2, 430, 1, 0).is_ok());
        assert!(validate_theta(-1, -4, 0, 0).is_ok());
    }

    #[test]
    fn rejects_odd_k_with_eps_set() {
        assert_eq!(validate_theta(1, 4, 1, 0), Err(Error::OddKForcesEpsZero));
        assert_eq!(validate_theta(-3, 36, 1, 1), Err(Error::OddKForcesEpsZero));
    }

    #[test]
    fn rejects_broken_congruences_with_the_right_modulus() {
        assert_eq!(validate_theta(1, 5, 0, 0), Err(Error::CongruenceViolated { modulus: 24 }));
        assert_eq!(validate_theta(2, 3, 1, 0), Err(Error::CongruenceViolated { modulus: 48 }));
        // p = k + 24 is only a delta = 1 class: mod 48 the shift matters.
        assert!(validate_theta(2, 26, 1, 0).is_err());
        assert!(validate_theta(2, 26, 1, 1).is_ok());
        // Under eps = 0 the delta shift is invisible mod 24.
        assert!(validate_theta(2, 8, 0, 0).is_ok());
        assert!(validate_theta(2, 8, 0, 1).is_ok());
    }

    #[test]
    fn rejects_non_flag_values_and_oversized_parameters() {
        assert_eq!(validate_theta(1, 4, 2, 0), Err(Error::NotAFlag("eps")));
        assert_eq!(validate_theta(1, 4, 0, -1), Err(Error::NotAFlag("delta")));
        assert_eq!(validate_theta(1 << 41, 4 << 41, 0, 0), Err(Error::OutOfRange("k")));
        assert_eq!(validate_theta(1, 24 * (1 << 44) + 4, 0, 0), Err(Error::OutOfRange("p")));
    }

    #[test]
    fn enumerates_in_lexicographic_order() {
        let got: Vec<_> = enumerate_theta(1..=1, 0..=25).iter().map(quad).collect();
        assert_eq!(got, vec![(1, 4, 0, 0), (1, 4, 0, 1)]);

        let got: Vec<_> = enumerate_theta(0..=0, 0..=0).iter().map(quad).collect();
        assert_eq!(got, vec![(0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0)]);

        let got: Vec<_> = enumerate_theta(2..=2, 0..=30).iter().map(quad).collect();
        assert_eq!(
            got,
            vec![(2, 2, 1, 0), (2, 8, 0, 0), (2, 8, 0, 1), (2, 26, 1, 1)],
        );
    }

    #[test]
    fn enumeration_agrees_with_validation() {
        let listed = enumerate_theta(-6..=6, -60..=60);
        let mut expected = Vec::new();
        for k in -6..=6 {
            for p in -60..=60 {
                for (eps, delta) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    if let Ok(theta) = validate_theta(k, p, eps, delta) {
                        expected.push(theta);
                    }
                }
            }
        }
        assert_eq!(listed, expected);
        assert!(listed.contains(&validate_theta(4, 40, 0, 0).unwrap()));
    }
}
