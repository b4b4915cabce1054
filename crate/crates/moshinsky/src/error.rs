use thiserror::Error;

/// Everything that can fail in this crate.
///
/// The closed-form layer is total on its domain types, so errors come from
/// two places: out-of-range raw inputs at construction or call boundaries,
/// and the iterative machinery in the oracle layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coupling constant must be nonnegative and finite, got {0}")]
    NegativeCoupling(f64),

    #[error("correlation energy must be nonnegative and finite, got {0}")]
    NegativeEnergy(f64),

    #[error("correlation energy must be positive, got {0}")]
    NonpositiveEnergy(f64),

    #[error("concurrence must lie in [0, 1), got {0}")]
    ConcurrenceOutOfRange(f64),

    #[error("deviation weight must be positive and finite, got {0}")]
    NonpositiveWeight(f64),

    #[error("truncation tolerance must lie in (0, 1), got {0}")]
    InvalidTolerance(f64),

    #[error("need at least {min} points, got {given}")]
    TooFewPoints { given: usize, min: usize },

    #[error("interval [{a}, {b}] is empty or not finite")]
    EmptyInterval { a: f64, b: f64 },

    #[error("half-width must be positive and finite, got {0}")]
    InvalidHalfWidth(f64),

    #[error("matrix is not symmetric: |a_ij - a_ji| up to {0}")]
    NotSymmetric(f64),

    #[error("eigensolver did not converge: off-diagonal norm {off_norm} after {sweeps} sweeps")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("grid requires strictly positive couplings, got {0}")]
    CouplingNotPositive(f64),

    #[error("malformed table: {0}")]
    MalformedTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
