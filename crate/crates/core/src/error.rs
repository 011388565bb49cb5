use alloc::string::String;

/// Errors raised by constructions and analyses.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("empty set has no Hausdorff distance")]
    EmptySet,
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("unsupported dimension {0}")]
    UnsupportedDim(usize),
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("need at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("patch radius mismatch: {0} vs {1}")]
    RadiusMismatch(f64, f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("anchor not a point of the set")]
    AnchorNotInSet,
    #[error("window too small for radius: need {required}, have {actual}")]
    WindowTooSmall { required: f64, actual: f64 },
    #[error("margin violated ({what}): need {required}, have {actual}")]
    Margin {
        what: &'static str,
        required: f64,
        actual: f64,
    },
    #[error("singular phase: lattice point ({m}, {n}) on the acceptance window boundary")]
    SingularPhase { m: i64, n: i64 },
    #[error("theta too close to rational {p}/{q}")]
    ThetaNearRational { p: i64, q: i64 },
    #[error("singular basis")]
    SingularBasis,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("bisection bracket failure in cell ({p}, {q})")]
    BracketFailure { p: i64, q: i64 },
    #[error("a is not an ε-almost period: no match for x = {x}")]
    NotAlmostPeriod { x: f64 },
    #[error("epsilon exceeds matching uniqueness at x = {x}")]
    AmbiguousMatch { x: f64 },
    #[error("epsilon too coarse for unique matching: epsilon = {epsilon}, limit = {limit}")]
    EpsilonTooCoarse { epsilon: f64, limit: f64 },
    #[error("patch not found in sample")]
    PatchNotFound,
    #[error("sets not distinct at this scale")]
    NotDistinct,
    #[error("count too large: requested {requested}, available {available}")]
    CountTooLarge { requested: usize, available: usize },
    #[error("empty ladder")]
    EmptyLadder,
}

impl Error {
    /// True for errors caused by a window or scale that is too small for the
    /// requested analysis, as opposed to malformed input.
    pub fn is_scale_error(&self) -> bool {
        matches!(
            self,
            Error::WindowTooSmall { .. }
                | Error::Margin { .. }
                | Error::TooFewPoints(_)
                | Error::EpsilonTooCoarse { .. }
                | Error::CountTooLarge { .. }
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
