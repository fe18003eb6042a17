//! Exact bases for the ℚ-linear relations among reciprocal power sums of
//! second-order recurrence sequences.
//!
//! Fix a real β with 0 < |β| < 1 and put α = −1/β, so that αβ = −1. The
//! associated Lucas pair
//!
//! ```text
//! U_n = (αⁿ − βⁿ) / (α − β),        V_n = αⁿ + βⁿ
//! ```
//!
//! consists of the Fibonacci and Lucas numbers when β = (1 − √5)/2. For each
//! integer s ≥ 1 four series converge:
//!
//! ```text
//! Φ₂ₛ  = (α−β)⁻²ˢ Σ_{n≥1} U_n⁻²ˢ        Φ₂ₛ* = (α−β)⁻²ˢ Σ_{n≥1} (−1)ⁿ⁺¹ U_n⁻²ˢ
//! Ψ₂ₛ  =          Σ_{n≥1} V_n⁻²ˢ        Ψ₂ₛ* =          Σ_{n≥1} (−1)ⁿ⁺¹ V_n⁻²ˢ
//! ```
//!
//! All 4m values with 1 ≤ s ≤ m admit closed forms in the elliptic world:
//! writing q = β² as the nome of a Jacobi elliptic modulus k, each series is a
//! ℚ-linear combination of a fixed family of transcendental monomials in
//! (2K/π)², k², and E/K. Collecting those combinations into one exact rational
//! matrix turns "linear relation among the series" into "kernel vector of the
//! matrix". The kernel has dimension exactly m, and this crate computes a
//! canonical primitive integer basis for it, together with a zero-pattern
//! certificate and arbitrary-precision numeric cross-checks of every relation
//! against direct summation.
//!
//! The pipeline, bottom to top:
//!
//! * [`qalgebra`] — exact rationals, polynomials in k², even power series in
//!   z with polynomial coefficients, Bernoulli numbers.
//! * [`elliptic_series`] — Laurent/Taylor coefficient tables of 1/sn²,
//!   1/(1−k²sn²), 1/(1−sn²), and 1−k²sn², plus their k → 0 trigonometric
//!   limits.
//! * [`aux_polys`] — the sum/difference polynomials Θ_j∓, Λ_j∓ built from
//!   those tables, their closed-form coefficient formulas, and the
//!   one-dimensional kernel attached to each index j.
//! * [`relation_matrix`] — contraction weights, the 4×4 blocks carrying the
//!   s-th quadruple of series, and assembly of the full relation matrix in
//!   block and scalar forms.
//! * [`kernel_solver`] — exact kernel extraction, the canonical relation
//!   basis, membership tests, and human-readable formatting.
//! * [`numeric_verify`] — arbitrary-precision summation with certified tail
//!   bounds, elliptic constants from the nome, Jacobi functions at complex
//!   arguments, and residual checks of every closed form and relation.
//! * [`cli`] — the `rzr` command-line interface over all of the above.
//!
//! # Example
//!
//! ```
//! use rzr::kernel_solver::{format_relation, relation_space, RelationStyle};
//!
//! let basis = relation_space(1).unwrap();
//! assert_eq!(basis.vectors.len(), 1);
//! assert_eq!(basis.vectors[0].t, [-2, 1, 0, 1].map(rug::Integer::from));
//!
//! let line = format_relation(&basis.vectors[0], RelationStyle::PhiPsi);
//! assert_eq!(line, "−2Φ₂ + Φ₂* + Ψ₂* = 0");
//! ```

pub mod aux_polys;
pub mod cli;
pub mod elliptic_series;
pub mod kernel_solver;
pub mod numeric_verify;
pub mod qalgebra;
pub mod relation_matrix;

pub use qalgebra::{Int, ModPoly, Rat, ZSeries};

/// Errors raised by the exact and numeric layers.
///
/// Contract violations that can only arise from caller bugs (mismatched
/// series parities, out-of-range block indices) panic instead; the variants
/// here are the conditions a correct caller can still run into, or that a
/// failed mathematical certification must surface.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Bernoulli numbers are exposed for positive even index only.
    #[error("Bernoulli index must be a positive even integer, got {0}")]
    BernoulliIndex(i64),

    /// Reciprocal of a series whose leading coefficient is zero or not a
    /// nonzero constant.
    #[error("series not invertible: leading coefficient must be a nonzero constant")]
    SeriesNotInvertible,

    /// A table lookup past the stored depth.
    #[error("{what} index {index} out of range (stored up to {max})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    /// Matrix assembly for m needs auxiliary polynomials up to index m−1.
    #[error("insufficient aux table depth: need {needed}, have {have}")]
    InsufficientAuxDepth { needed: usize, have: usize },

    /// The four-polynomial contraction at some index j must have a
    /// one-dimensional kernel; anything else is a broken build.
    #[error("four-term kernel at j={j} has dimension {dim}, expected 1")]
    KernelNotOneDimensional { j: usize, dim: usize },

    /// The relation space for m must have dimension exactly m.
    #[error("relation-space dimension {dim} for m={m}, expected exactly {m}")]
    DimensionMismatch { m: usize, dim: usize },

    /// A canonical basis vector has a nonzero entry in a slot the structure
    /// theorem forces to zero.
    #[error("zero-pattern violation for m={m}: {detail}")]
    ZeroPatternViolated { m: usize, detail: String },

    /// The structured-elimination basis disagrees with the scalar-kernel
    /// basis.
    #[error("independent kernel routes disagree for m={m}")]
    BasisCrossCheckFailed { m: usize },

    /// A membership or formatting call received a vector of the wrong length.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// A recurrence term U_n or V_n vanished, so some reciprocal power sum
    /// does not exist.
    #[error("series undefined: {name}_{index} vanishes")]
    SeriesUndefined { name: &'static str, index: usize },

    /// The nome must lie strictly between 0 and 1.
    #[error("nome must lie in (0,1), got {0}")]
    NomeOutOfRange(String),

    /// Numeric elliptic evaluation needs 0 ≤ k² < 1.
    #[error("squared modulus must lie in [0,1), got {0}")]
    ModulusOutOfRange(String),

    /// β must be real with 0 < |β| < 1.
    #[error("beta must satisfy 0 < |beta| < 1, got {0}")]
    BetaOutOfRange(String),

    /// A Jacobi-function argument too close to a pole or zero of the
    /// requested quotient.
    #[error("argument near pole")]
    ArgumentNearPole,

    /// Unparseable rational, surd, or command-line number.
    #[error("parse error: {0}")]
    Parse(String),

    /// Output-file trouble in the CLI.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
