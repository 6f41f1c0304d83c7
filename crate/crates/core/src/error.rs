use core::fmt;

/// Errors raised by the projection, derivative and verification routines.
///
/// Non-differentiability is not an error: derivative queries report it
/// through [`crate::Frechet::NotDifferentiable`].
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A vector was constructed with no entries.
    Empty,
    /// A NaN or infinite entry was offered at `index`.
    NonFinite { index: usize },
    DimensionMismatch { expected: usize, found: usize },
    /// The base vector of a radial/orthogonal split is zero.
    ZeroBase,
    ZeroDirection,
    /// The point is not on the ball boundary within the admitted band.
    NotOnBoundary { signed_distance: f64 },
    NonPositiveRadius(f64),
    /// A second-order-cone point needs at least two coordinates.
    ConeTooSmall(usize),
    /// The fallback unit vector for `z2 = 0` is not a unit vector of length m-1.
    BadFallback,
    /// Finite-difference steps must lie in `[1e-10, 1e-2]`.
    InvalidStep(f64),
    /// Richardson halving drove the step below `1e-12`.
    StepUnderflow(f64),
    /// Repeated sampling produced coincident points.
    DegeneratePair,
    /// A sampled point fell outside the smooth region supplied by the caller.
    RegionViolation,
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Empty => write!(f, "vector must have at least one entry"),
            Error::NonFinite { index } => write!(f, "entry {index} is not finite"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::ZeroBase => write!(f, "base vector has zero norm"),
            Error::ZeroDirection => write!(f, "direction has zero norm"),
            Error::NotOnBoundary { signed_distance } => {
                write!(f, "point is not on the ball boundary (signed distance {signed_distance:e})")
            }
            Error::NonPositiveRadius(r) => write!(f, "radius must be positive, got {r}"),
            Error::ConeTooSmall(m) => {
                write!(f, "second-order cone needs dimension >= 2, got {m}")
            }
            Error::BadFallback => write!(f, "fallback must be a unit vector of length m-1"),
            Error::InvalidStep(t) => write!(f, "finite-difference step {t:e} outside [1e-10, 1e-2]"),
            Error::StepUnderflow(t) => write!(f, "extrapolation step {t:e} fell below 1e-12"),
            Error::DegeneratePair => write!(f, "could not draw a non-degenerate sample pair"),
            Error::RegionViolation => write!(f, "sampled point left the smooth region"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
