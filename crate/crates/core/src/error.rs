use thiserror::Error;

/// Errors raised by the geometry engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The point is not in the interior of the hyperboloid solid (Q(X) >= 0).
    #[error("point is not interior to the model: Q(X) = {q:e}")]
    ExteriorPoint { q: f64 },

    /// The point has x0 = 0 and has no inhomogeneous coordinates.
    #[error("point lies at infinity (x0 = 0)")]
    PointAtInfinity,

    /// Invalid tiling parameters.
    #[error("invalid prism parameters ({p},{q}): {reason}")]
    InvalidParams { p: i64, q: i64, reason: String },

    /// A value outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// The geodesic integrator could not reach the requested arc length.
    #[error("geodesic integration failed at s = {s}: {reason} (after {steps} steps)")]
    Integration {
        s: f64,
        steps: usize,
        reason: String,
    },

    /// The shooting solver found no geodesic to the target.
    #[error("distance solver did not converge (best residual {best_residual:e})")]
    NoConvergence { best_residual: f64 },

    /// Adaptive quadrature hit its subdivision limit above tolerance.
    #[error(
        "quadrature did not converge: estimated error {est_error:e} after {intervals} intervals"
    )]
    Quadrature { est_error: f64, intervals: usize },

    /// A one dimensional minimizer ended at the boundary of its bracket.
    #[error("minimum not bracketed in [{lo}, {hi}]")]
    NotBracketed { lo: f64, hi: f64 },

    /// Inconsistent geometric data (e.g. a non-monotone side curve).
    #[error("geometry error: {0}")]
    Geometry(String),

    /// A group relation failed numerically.
    #[error("relation {relation} failed with residual {residual:e}")]
    Relation { relation: String, residual: f64 },

    /// A computed quantity violates an internal invariant.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    /// An operation needing at least one result got none.
    #[error("empty input: {0}")]
    Empty(String),
}

pub type Result<T> = std::result::Result<T, Error>;
