//! Higher-order Fourier analysis on finite abelian groups.
//!
//! The crate computes Gowers uniformity norms `U_k`, Gowers inner products,
//! corner convolutions and configuration moments for dense complex functions
//! on products of cyclic groups, together with the finite algebraic machinery
//! behind them: cube morphisms, nilspace axiom checking, degree-k structures
//! `D_k(A)`, face-vector groups `Z_{n,k}(A)`, cocycles and coboundaries,
//! Leibman polynomials, and an exact-rational Heisenberg nilmanifold pipeline.
//!
//! Everything is desk scale by design: each fast path is paired with a
//! brute-force oracle (see [`brute`]) and the test suite checks them against
//! each other.  Sampled estimators use counter-based per-sample randomness so
//! results are reproducible bit for bit under any parallel partition.
//!
//! The `examples/` directory of this crate is the best place to start; each
//! example exercises one capability end to end.  A thin `gowers` binary
//! exposes the same operations as subcommands.

pub mod brute;
pub mod cli;
pub mod cubes;
pub mod decompose;
pub mod group;
pub mod heisenberg;
pub mod moments;
pub mod norms;
pub mod numeric;
pub mod polymaps;
pub mod sampling;

pub use group::{Character, FiniteAbelianGroup, GroupElement, GroupFunction, Spectrum};
pub use sampling::SeedStream;

/// Default absolute comparison tolerance for floating-point identities.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance for quantities that are exact up to a final `e(·)` evaluation.
pub const STRICT_TOL: f64 = 1e-12;

/// Groups are capped at this order at construction time.
pub const MAX_GROUP_ORDER: usize = 1 << 20;

/// Errors shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cyclic factors must all be >= 2, got {0}")]
    InvalidFactor(u64),
    #[error("a group needs at least one cyclic factor")]
    EmptyFactors,
    #[error("group order {order} exceeds the construction cap {cap}")]
    OrderCap { order: u128, cap: usize },
    #[error("functions live on different groups: {0} vs {1}")]
    GroupMismatch(String, String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{what} of size {size} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error("function system is incomplete: expected {expected} entries, got {got}")]
    IncompleteSystem { expected: usize, got: usize },
    #[error("cubes are not adjacent")]
    NotAdjacent,
    #[error("cube morphism is not bijective")]
    NotBijective,
    #[error("multiplicative data must have modulus 1, found |{0}|")]
    NotUnimodular(f64),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("U_2 norm {measured} is below the requested threshold {required}")]
    NormBelowThreshold { measured: f64, required: f64 },
    #[error("imaginary residue {0} exceeds tolerance in a quantity that must be real")]
    ImaginaryResidue(f64),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
