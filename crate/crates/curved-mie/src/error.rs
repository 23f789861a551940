//! Crate-wide error type.

/// Convenience alias used by every fallible operation in the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the analytic and numerical halves.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A physical parameter violated its domain (non-positive mass, radius, …).
    #[error("invalid physical parameter {name}: {value} ({requirement})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// A coordinate left its chart: `r ≤ 0`, `ψ ∉ (0, π)`, angle out of range.
    #[error("coordinate {name} = {value} outside {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// The potential was evaluated at one of its singular endpoints.
    #[error("potential is singular at psi = {psi} (endpoints 0 and pi are poles)")]
    SingularPoint { psi: f64 },

    /// The flat chart `r = R·tanψ` only covers the half-sphere `ψ < π/2`.
    #[error("psi = {psi} is outside the flat chart [0, pi/2)")]
    ChartRange { psi: f64 },

    /// No bound channel: the centrifugal discriminant went negative.
    #[error("no bound channel: discriminant {discriminant} < 0 for m = {m}")]
    NoBoundChannel { m: u32, discriminant: f64 },

    /// Radial index must start at 1.
    #[error("radial index n must be >= 1 (got {n})")]
    InvalidRadialIndex { n: u32 },

    /// A level with `n + j = 0` has no finite energy.
    #[error("singular level: n + j = {n_plus_j} vanishes")]
    SingularLevel { n_plus_j: f64 },

    /// Jacobi recurrence denominator vanished at an intermediate degree.
    #[error("degenerate Jacobi recurrence at degree k = {degree}: {detail}")]
    DegenerateRecurrence { degree: u32, detail: String },

    /// Grid constraints (size, parity) violated.
    #[error("invalid grid: {detail} (got {value})")]
    InvalidGrid { detail: &'static str, value: usize },

    /// Eigenvalue count exceeds what the operator can supply.
    #[error("requested {requested} eigenvalues from an operator of dimension {dimension}")]
    TooManyEigenvalues { requested: usize, dimension: usize },

    /// Inverse iteration failed to converge even after shift perturbations.
    #[error("inverse iteration failed near eigenvalue {eigenvalue} after {attempts} attempts")]
    EigenvectorBreakdown { eigenvalue: f64, attempts: u32 },

    /// Richardson extrapolation needs matching eigenvalue counts and a doubled grid.
    #[error("extrapolation inputs mismatch: {detail}")]
    ExtrapolationMismatch { detail: String },

    /// A wave sample with vanishing norm cannot be normalized.
    #[error("cannot normalize a zero-norm wave sample")]
    ZeroNorm,

    /// Generator family and factorization branch disagree.
    #[error("generator {generator} requires factorization branch {expected_branch}")]
    BranchMismatch {
        generator: &'static str,
        expected_branch: &'static str,
    },

    /// Two grids that must be identical differ.
    #[error("grid mismatch: {detail}")]
    GridMismatch { detail: String },
}
