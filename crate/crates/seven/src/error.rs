//! Error type shared by every module in the crate.

/// Everything that can go wrong when validating inputs or computing
/// invariants. Domain rejections carry enough context to echo verbatim on a
/// command line.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A rational with denominator zero was requested.
    #[error("undefined rational")]
    UndefinedRational,

    /// A 0/1 flag (eps, delta, c) was given another value.
    #[error("{0} must be 0 or 1")]
    NotAFlag(&'static str),

    /// A parameter left the range for which all derived quantities are
    /// guaranteed representable (see the limits in the crate root).
    #[error("{0} exceeds the supported range")]
    OutOfRange(&'static str),

    /// Orbit-space classes with odd k cannot have eps = 1: an odd
    /// self-intersection coefficient forces the second Stiefel-Whitney
    /// class of the base to vanish on the distinguished generator.
    #[error("odd k forces eps=0")]
    OddKForcesEpsZero,

    /// The Pontrjagin coefficient p fails the congruence that characterizes
    /// realizable orbit-space classes; the offending modulus is 24 for
    /// eps = 0 (and all odd k) and 48 for eps = 1.
    #[error("congruence violated (mod {modulus})")]
    CongruenceViolated { modulus: i64 },

    /// The topological model M^1_{l,k} only exists for even k.
    #[error("c = 1 requires even k")]
    TopologicalCoreOddK,

    /// A class with delta = 1 has a non-smoothable orbit space and cannot
    /// be fed to a smooth-category computation.
    #[error("non-smoothable theta in DIFF category")]
    NonSmoothableInDiff,

    /// The model M^1_{l,k} carries no smooth structure.
    #[error("M^1 is not smooth")]
    TopologicalCoreInDiff,

    /// Smooth classification is only defined for delta = 0.
    #[error("delta must be 0")]
    DeltaMustBeZero,

    /// Invariant comparison across categories is not defined.
    #[error("category mismatch")]
    CategoryMismatch,

    /// Total spaces of circle bundles over orbit spaces always carry an
    /// even number of S^3 x S^4 summands.
    #[error("odd rank")]
    OddRank,

    /// Counting was requested for a manifold admitting no regular circle
    /// action at all.
    #[error("not in an admitting family")]
    NotInAdmittingFamily,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
