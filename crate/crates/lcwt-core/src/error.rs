//! Error types shared by all modules.
//!
//! Diagnostic payloads are carried as `f64` regardless of the scalar type the
//! engine was instantiated with, so the error enum stays non-generic.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, LcwtError>;

/// Everything that can go wrong across the transform pipeline.
#[derive(Debug, Error)]
pub enum LcwtError {
    /// Matrix failed the unit-determinant invariant at construction.
    #[error("matrix determinant {det} is not 1 (|det - 1| = {deviation:e} exceeds tolerance)")]
    NonUnitDeterminant { det: f64, deviation: f64 },

    /// Operation requires |B| > 0 but the matrix has B ~ 0.
    #[error("matrix has B = {b:e}; the quadrature kernel is undefined (use the B=0 branch)")]
    DegenerateBranch { b: f64 },

    /// Matrix is structurally invalid for the requested operation.
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    /// Signal construction rejected (non-finite samples, dt <= 0, too short).
    #[error("invalid signal: {0}")]
    InvalidSignal(String),

    /// Scale/shift grid construction rejected.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// Two signals that must share a sampling grid do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Admissibility integrand is not integrable near u = 0.
    #[error("divergent admissibility: |spectrum|^2 ~ u^{alpha:.3} near u = 0 (need alpha > {min_alpha})")]
    DivergentAdmissibility { alpha: f64, min_alpha: f64 },

    /// Positive- and negative-axis admissibility constants disagree.
    #[error(
        "not admissible: half-line constants C+ = {c_pos:e}, C- = {c_neg:e} differ by {rel:e} (tol {tol:e})"
    )]
    NotAdmissible {
        c_pos: f64,
        c_neg: f64,
        rel: f64,
        tol: f64,
    },

    /// Pair admissibility failed (constants disagree or the value vanishes).
    #[error("not an admissible pair: {0}")]
    NotAPair(String),

    /// Scale parameter must be strictly positive.
    #[error("invalid scale a = {a}; scales must be > 0")]
    InvalidScale { a: f64 },

    /// Spectral centre is ~0 so the Q-factor is undefined.
    #[error("spectral window centre is ~0; Q-factor undefined")]
    ZeroCentre,

    /// Concentration precondition failed.
    #[error("not concentrated: measured epsilon {measured:e} exceeds required {required:e}")]
    NotConcentrated { measured: f64, required: f64 },

    /// Parameter outside the domain of the inequality being checked.
    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    /// Projection bound precondition |Omega| < 2*pi*|B|*C/||psi||^2 failed.
    #[error("measure {measure:e} is not below the threshold {threshold:e}")]
    MeasureTooLarge { measure: f64, threshold: f64 },

    /// Operation on an identically-zero signal or scalogram.
    #[error("signal has no energy")]
    ZeroSignal,

    /// Grid truncates a function that still carries boundary mass.
    #[error("boundary mass {mass:e} exceeds {limit:e}; widen the grid")]
    BoundaryMass { mass: f64, limit: f64 },

    /// Requested shift grid cannot be reached by the fast transform path.
    #[error("shift grid incompatible with the fast path: {0}")]
    IncompatibleShiftGrid(String),

    /// Scalogram energy exceeds the Plancherel upper bound at grid resolution.
    #[error(
        "scalogram energy {energy:e} exceeds Plancherel bound {bound:e}; the analysis grid is inconsistent"
    )]
    EnergyBoundExceeded { energy: f64, bound: f64 },

    /// Malformed serialized scalogram or report payload.
    #[error("format error: {0}")]
    Format(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
