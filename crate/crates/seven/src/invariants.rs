//! Manifold descriptors and their invariant systems.
//!
//! The classification targets are closed 2-connected 7-manifolds M with
//! H^4(M) = Z^rank (+) Z/k, described up to connected sum with copies of
//! S^3 x S^4 by a model core M^c_{l,k} and, in the smooth category, an
//! exotic 7-sphere summand Sigma_r. The invariant system attached to such
//! a manifold consists of the torsion coefficient k, the free rank, the
//! spin characteristic class ph in Z/k, the self-linking value in Q/Z, the
//! Kirby-Siebenmann flag, and the two Eells-Kuiper style Q/Z invariants
//! s1 (topological) and mu (smooth, 28*mu = s1). All of it is computed by
//! exact arithmetic from closed formulas, both for the model cores and for
//! total spaces of circle bundles given by an orbit-space class.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{RatModZ, ResidueModK};
use crate::theta::ThetaClass;
use crate::{K_LIMIT, L_LIMIT};

/// The category a classification statement lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Category {
    Top,
    Diff,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::Top => "TOP",
            Category::Diff => "DIFF",
        })
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "top" => Ok(Category::Top),
            "diff" => Ok(Category::Diff),
            _ => Err(Error::CategoryMismatch),
        }
    }
}

impl Serialize for Category {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Category {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A model core M^c_{l,k}: the rank-zero building block of the
/// classification, with H^4 = Z/k generated by a class u with linking
/// form u*u = 1/k, parameter l feeding the characteristic classes, and
/// c a topological flag (c = 1 marks the fake version that exists only
/// for even k and carries no smooth structure).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CoreManifold {
    l: i64,
    k: i64,
    c: u8,
}

impl CoreManifold {
    pub fn new(l: i64, k: i64, c: i64) -> Result<Self> {
        if !(0..=1).contains(&c) {
            return Err(Error::NotAFlag("c"));
        }
        if l.unsigned_abs() > L_LIMIT as u64 {
            return Err(Error::OutOfRange("l"));
        }
        if k.unsigned_abs() > K_LIMIT as u64 {
            return Err(Error::OutOfRange("k"));
        }
        if c == 1 && k % 2 != 0 {
            return Err(Error::TopologicalCoreOddK);
        }
        Ok(CoreManifold { l, k, c: c as u8 })
    }

    /// Constructor for classification images, skipping the range guards of
    /// [`CoreManifold::new`]: the classification formulas applied to any
    /// validated orbit-space class can produce l beyond the user-facing
    /// cap, and that is fine because every downstream computation widens
    /// to 128-bit or big integers.
    pub(crate) fn from_classification(l: i64, k: i64, c: u8) -> Self {
        debug_assert!(c == 0 || k % 2 == 0, "c = 1 needs even k");
        CoreManifold { l, k, c }
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn c(&self) -> u8 {
        self.c
    }
}

impl fmt::Display for CoreManifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M^{}_{{{},{}}}", self.c, self.l, self.k)
    }
}

impl<'de> Deserialize<'de> for CoreManifold {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            l: i64,
            k: i64,
            c: i64,
        }
        let raw = Raw::deserialize(deserializer)?;
        CoreManifold::new(raw.l, raw.k, raw.c).map_err(serde::de::Error::custom)
    }
}

/// A full manifold description: `rank` copies of S^3 x S^4 summed with a
/// model core and, in the smooth category, `exotic` copies of the
/// generating exotic 7-sphere.
///
/// Construction normalizes: the rank must be even (total spaces and model
/// families only produce even ranks), exotic summands are reduced mod 28
/// and dropped entirely in the topological category, and the fake core
/// (c = 1) is refused in the smooth category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ManifoldDescriptor {
    category: Category,
    rank: u32,
    core: CoreManifold,
    exotic: u8,
}

impl ManifoldDescriptor {
    pub fn new(rank: u32, core: CoreManifold, exotic: i64, category: Category) -> Result<Self> {
        if rank % 2 != 0 {
            return Err(Error::OddRank);
        }
        if category == Category::Diff && core.c() == 1 {
            return Err(Error::TopologicalCoreInDiff);
        }
        let exotic = match category {
            Category::Top => 0,
            Category::Diff => exotic.rem_euclid(28) as u8,
        };
        Ok(ManifoldDescriptor { category, rank, core, exotic })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn core(&self) -> CoreManifold {
        self.core
    }

    /// Number of exotic-sphere summands, already reduced mod 28. Note that
    /// when the core has k = 0 this is still the nominal count carried by
    /// the descriptor; comparisons absorb it because a torsion-free core
    /// swallows exotic summands up to diffeomorphism.
    pub fn exotic(&self) -> u8 {
        self.exotic
    }

    pub fn category(&self) -> Category {
        self.category
    }
}

impl fmt::Display for ManifoldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank > 0 {
            write!(f, "{}(S3xS4) # ", self.rank)?;
        }
        write!(f, "{}", self.core)?;
        if self.exotic > 0 {
            write!(f, " # Sigma_{}", self.exotic)?;
        }
        write!(f, " [{}]", self.category)
    }
}

impl<'de> Deserialize<'de> for ManifoldDescriptor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            category: Category,
            rank: u32,
            core: CoreManifold,
            #[serde(default)]
            exotic: i64,
        }
        let raw = Raw::deserialize(deserializer)?;
        ManifoldDescriptor::new(raw.rank, raw.core, raw.exotic, raw.category)
            .map_err(serde::de::Error::custom)
    }
}

fn undefined_as_string<S: Serializer>(
    v: &Option<RatModZ>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => r.serialize(serializer),
        None => serializer.serialize_str("undefined"),
    }
}

/// The invariant system of a manifold. Values that are undefined for the
/// inputs at hand (everything rational when k = 0, mu in the topological
/// category) are `None` and serialize as the string "undefined".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantTuple {
    /// Torsion coefficient of H^4, sign as carried by the input.
    pub h4_k: i64,
    /// Free rank of H^4 contributed by S^3 x S^4 summands.
    pub b4_free_rank: u32,
    /// Half the spin characteristic class on the distinguished generator,
    /// as a residue mod k (mod 0 = no reduction).
    pub ph: ResidueModK,
    /// Self-linking value of the generator, 1/k in Q/Z; undefined at k = 0.
    #[serde(serialize_with = "undefined_as_string")]
    pub linking: Option<RatModZ>,
    /// Kirby-Siebenmann smoothing obstruction, 0 or 1.
    pub ks: u8,
    /// Topological Eells-Kuiper invariant in Q/Z; undefined at k = 0.
    #[serde(serialize_with = "undefined_as_string")]
    pub s1: Option<RatModZ>,
    /// Smooth Eells-Kuiper invariant in Q/Z, with 28*mu = s1; undefined at
    /// k = 0 and in the topological category.
    #[serde(serialize_with = "undefined_as_string")]
    pub mu: Option<RatModZ>,
}

impl fmt::Display for InvariantTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn opt(v: &Option<RatModZ>) -> String {
            v.as_ref().map_or_else(|| "undefined".to_string(), |r| r.to_string())
        }
        writeln!(f, "torsion k: {}", self.h4_k)?;
        writeln!(f, "free rank: {}", self.b4_free_rank)?;
        writeln!(f, "ph: {}", self.ph)?;
        writeln!(f, "linking: {}", opt(&self.linking))?;
        writeln!(f, "ks: {}", self.ks)?;
        writeln!(f, "s1: {}", opt(&self.s1))?;
        write!(f, "mu: {}", opt(&self.mu))
    }
}

fn frac(num: impl Into<BigInt>, den: impl Into<BigInt>) -> RatModZ {
    RatModZ::new(num, den).expect("denominator is nonzero by construction")
}

/// Invariants of the total space of the circle bundle encoded by an
/// orbit-space class.
///
/// With theta = (k, p, eps, delta) the total space has H^4 = Z/k with
/// ph = (p + eps*k)/2 mod k, linking 1/k, Kirby-Siebenmann class delta
/// for even k (and 0 for odd k), and for k != 0
///
/// ```text
/// s1 = -|k|/(8k) + (p+k)^2/(32k) + 7(eps-1)(2p+k)/96      in Q/Z,
/// mu = -|k|/(224k) + (p+k)^2/(896k) + (eps-1)(2p+k)/384   in Q/Z.
/// ```
///
/// mu is only reported in the smooth category, which in turn refuses
/// delta = 1 classes outright: their total spaces are not smoothable.
pub fn circle_bundle_invariants(theta: &ThetaClass, category: Category) -> Result<InvariantTuple> {
    if category == Category::Diff && theta.delta() == 1 {
        return Err(Error::NonSmoothableInDiff);
    }
    let k = theta.k();
    let p = theta.p();
    let eps = theta.eps() as i128;
    let ks = if k % 2 == 0 { theta.delta() } else { 0 };

    let ph_times_2 = p as i128 + eps * k as i128;
    debug_assert_eq!(ph_times_2 % 2, 0, "p + eps*k is even for every realizable class");
    let ph = ResidueModK::from_i128(k, ph_times_2 / 2);

    if k == 0 {
        return Ok(InvariantTuple {
            h4_k: k,
            b4_free_rank: 0,
            ph,
            linking: None,
            ks,
            s1: None,
            mu: None,
        });
    }

    let pk = BigInt::from(p) + k;
    let pk_sq = &pk * &pk;
    let edge = (eps - 1) * (2 * p as i128 + k as i128);

    let s1 = frac(-k.abs() as i128, 8 * k as i128)
        + frac(pk_sq.clone(), 32 * k as i128)
        + frac(7 * edge, 96);
    let mu = match category {
        Category::Top => None,
        Category::Diff => Some(
            frac(-k.abs() as i128, 224 * k as i128)
                + frac(pk_sq, 896 * k as i128)
                + frac(edge, 384),
        ),
    };

    Ok(InvariantTuple {
        h4_k: k,
        b4_free_rank: 0,
        ph,
        linking: Some(frac(1, k)),
        ks,
        s1: Some(s1),
        mu,
    })
}

/// Invariants of a model core M^c_{l,k}.
///
/// The core has ph = (2l + 12c) mod k, linking 1/k, Kirby-Siebenmann
/// class c, and for k != 0
///
/// ```text
/// s1 = ((2l + k + 12c)^2 - |k|) / (8k)     in Q/Z,
/// mu = ((2l + k)^2 - |k|) / (224k)         in Q/Z (smooth cores, c = 0).
/// ```
pub fn core_invariants(core: &CoreManifold, category: Category) -> Result<InvariantTuple> {
    if category == Category::Diff && core.c() == 1 {
        return Err(Error::TopologicalCoreInDiff);
    }
    let l = core.l();
    let k = core.k();
    let c = core.c() as i128;

    // c = 1 already implies k even, so the Kirby-Siebenmann class is c.
    let ks = core.c();
    let ph = ResidueModK::from_i128(k, 2 * l as i128 + 12 * c);

    if k == 0 {
        return Ok(InvariantTuple {
            h4_k: k,
            b4_free_rank: 0,
            ph,
            linking: None,
            ks,
            s1: None,
            mu: None,
        });
    }

    let w = BigInt::from(2 * l as i128 + k as i128 + 12 * c);
    let s1 = frac(&w * &w - k.abs(), 8 * k as i128);
    let mu = match category {
        Category::Top => None,
        Category::Diff => {
            let v = BigInt::from(2 * l as i128 + k as i128);
            Some(frac(&v * &v - k.abs(), 224 * k as i128))
        }
    };

    Ok(InvariantTuple {
        h4_k: k,
        b4_free_rank: 0,
        ph,
        linking: Some(frac(1, k)),
        ks,
        s1: Some(s1),
        mu,
    })
}

/// The mu invariant of the connected sum of `r` copies of the generating
/// exotic 7-sphere: r/28 in Q/Z. The group of homotopy 7-spheres is cyclic
/// of order 28 and mu is additive under connected sum, so this is total.
pub fn exotic_mu(r: i64) -> RatModZ {
    RatModZ::new(r, 28).expect("28 is nonzero")
}

/// Invariants of a full descriptor: the core invariants, with the free
/// rank set from the S^3 x S^4 summands and the exotic contribution added
/// to mu. Exotic summands are invisible to every other invariant.
pub fn descriptor_invariants(descriptor: &ManifoldDescriptor) -> Result<InvariantTuple> {
    let mut tuple = core_invariants(&descriptor.core(), descriptor.category())?;
    tuple.b4_free_rank = descriptor.rank();
    if let Some(mu) = tuple.mu.take() {
        tuple.mu = Some(mu + exotic_mu(descriptor.exotic() as i64));
    }
    Ok(tuple)
}
