//! Exact arithmetic carriers: rationals modulo 1 and integer residues
//! modulo a possibly-zero modulus.
//!
//! Every invariant computed by this crate lives in one of two places. The
//! spin characteristic classes and Eells-Kuiper style invariants are
//! elements of Q/Z, held here as [`RatModZ`]: a fraction reduced to the
//! canonical representative n/d with 0 <= n < d and gcd(n, d) = 1, so that
//! equality in Q/Z is plain structural equality. Cohomology coefficients
//! live in Z/k with the convention that k = 0 means Z itself; those are
//! held as [`ResidueModK`]. No floating point appears anywhere: a class
//! like 1/224 versus 5/1120 must compare by arithmetic, not by epsilon.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational residue modulo 1.
///
/// Internally always the canonical representative: denominator positive,
/// numerator in [0, den), fraction fully reduced. Zero is stored as 0/1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatModZ {
    num: BigUint,
    den: BigUint,
}

impl RatModZ {
    /// Reduces num/den to its canonical representative in [0, 1).
    ///
    /// A negative denominator is folded into the numerator first, so
    /// `new(-1, 8)` and `new(1, -8)` both give 7/8. The only failure is a
    /// zero denominator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let mut num: BigInt = num.into();
        let mut den: BigInt = den.into();
        if den.is_zero() {
            return Err(Error::UndefinedRational);
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let num = num.mod_floor(&den);
        let g = num.gcd(&den);
        let num = (num / &g).to_biguint().expect("canonical numerator is nonnegative");
        let den = (den / g).to_biguint().expect("canonical denominator is positive");
        Ok(RatModZ { num, den })
    }

    /// The zero class 0/1.
    pub fn zero() -> Self {
        RatModZ { num: BigUint::ZERO, den: BigUint::from(1u8) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Canonical numerator, in [0, denominator).
    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    /// Canonical denominator, always >= 1.
    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    /// The numerator of this class rewritten over the denominator `scale`,
    /// when the canonical denominator divides `scale`. Used to read, say,
    /// a class of exotic spheres as an integer number of 28ths.
    pub fn numerator_over(&self, scale: u64) -> Option<u64> {
        let scale_big = BigUint::from(scale);
        let (q, r) = scale_big.div_rem(&self.den);
        if !r.is_zero() {
            return None;
        }
        (&self.num * q).to_u64()
    }
}

/// Canonicalizes num/den as an element of Q/Z. Free-function spelling of
/// [`RatModZ::new`].
pub fn ratmodz_normalize(num: i64, den: i64) -> Result<RatModZ> {
    RatModZ::new(num, den)
}

/// Adds two classes in Q/Z. Free-function spelling of the `+` operator.
pub fn ratmodz_add(a: &RatModZ, b: &RatModZ) -> RatModZ {
    a + b
}

impl Add for &RatModZ {
    type Output = RatModZ;

    fn add(self, rhs: &RatModZ) -> RatModZ {
        // Both inputs are canonical, so the raw sum is < 2 and a single
        // conditional subtraction renormalizes; gcd reduction still applies.
        let den = &self.den * &rhs.den;
        let mut num = &self.num * &rhs.den + &rhs.num * &self.den;
        if num >= den {
            num -= &den;
        }
        let g = num.gcd(&den);
        RatModZ { num: num / &g, den: den / g }
    }
}

impl Add for RatModZ {
    type Output = RatModZ;

    fn add(self, rhs: RatModZ) -> RatModZ {
        &self + &rhs
    }
}

impl Neg for &RatModZ {
    type Output = RatModZ;

    fn neg(self) -> RatModZ {
        if self.num.is_zero() {
            return RatModZ::zero();
        }
        // gcd(den - num, den) = gcd(num, den) = 1, so this stays canonical.
        RatModZ { num: &self.den - &self.num, den: self.den.clone() }
    }
}

impl Neg for RatModZ {
    type Output = RatModZ;

    fn neg(self) -> RatModZ {
        -&self
    }
}

impl Sub for &RatModZ {
    type Output = RatModZ;

    fn sub(self, rhs: &RatModZ) -> RatModZ {
        self + &(-rhs)
    }
}

impl Sub for RatModZ {
    type Output = RatModZ;

    fn sub(self, rhs: RatModZ) -> RatModZ {
        &self - &rhs
    }
}

impl Mul<i64> for &RatModZ {
    type Output = RatModZ;

    fn mul(self, rhs: i64) -> RatModZ {
        let num = BigInt::from(self.num.clone()) * rhs;
        RatModZ::new(num, BigInt::from(self.den.clone()))
            .expect("scaling keeps the denominator nonzero")
    }
}

impl fmt::Display for RatModZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RatModZ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: BigInt = num.trim().parse().map_err(|_| Error::UndefinedRational)?;
        let den: BigInt = den.trim().parse().map_err(|_| Error::UndefinedRational)?;
        RatModZ::new(num, den)
    }
}

impl Serialize for RatModZ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RatModZ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An integer residue modulo a signed modulus, with modulus 0 meaning the
/// integers themselves (no reduction).
///
/// The modulus keeps its sign because it records the self-intersection
/// coefficient it came from, but reduction and equality only see its
/// absolute value: the stored value is canonical in [0, |modulus|) when
/// the modulus is nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueModK {
    modulus: i64,
    value: i64,
}

impl ResidueModK {
    pub fn new(modulus: i64, value: i64) -> Self {
        residue_reduce(modulus, value)
    }

    pub(crate) fn from_i128(modulus: i64, value: i128) -> Self {
        if modulus == 0 {
            let value = i64::try_from(value)
                .expect("unreduced residue over Z stays within the guarded parameter range");
            return ResidueModK { modulus, value };
        }
        let m = modulus.unsigned_abs() as i128;
        let value = value.rem_euclid(m) as i64;
        ResidueModK { modulus, value }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn value(&self) -> i64 {
        self.value
    }
}

/// Reduces `value` into [0, |modulus|), or leaves it untouched when the
/// modulus is 0. Total for every i64 pair, including `i64::MIN`.
pub fn residue_reduce(modulus: i64, value: i64) -> ResidueModK {
    ResidueModK::from_i128(modulus, value as i128)
}

impl fmt::Display for ResidueModK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} (mod {})", self.value, self.modulus.unsigned_abs())
        }
    }
}

impl Serialize for ResidueModK {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("ResidueModK", 2)?;
        s.serialize_field("mod", &self.modulus)?;
        s.serialize_field("val", &self.value)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for ResidueModK {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(rename = "mod")]
            modulus: i64,
            #[serde(rename = "val")]
            value: i64,
        }
        let raw = Raw::deserialize(deserializer)?;
        Ok(residue_reduce(raw.modulus, raw.value))
    }
}
