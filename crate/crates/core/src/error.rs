use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failures reported by the core operations.
///
/// Variants map onto precondition violations; none of them indicate an
/// internal inconsistency.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degenerate prefix: a name prefix must be nonempty")]
    DegeneratePrefix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("digit {digit} at row {row}, level {level} is not below its bound {bound}")]
    DigitOutOfBound {
        row: usize,
        level: usize,
        digit: u64,
        bound: u64,
    },
    #[error("symbol {symbol} is outside the alphabet of size {alphabet}")]
    SymbolOutOfRange { symbol: u64, alphabet: u64 },
    #[error("empty cover")]
    EmptyCover,
    #[error("no positive margin: {0}")]
    NoPositiveMargin(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("step budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("uncovered point")]
    UncoveredPoint,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("need at least two scales, got {0}")]
    TooFewScales(usize),
    #[error("scale {0} is not a cell scale of the set")]
    NotACellScale(String),
    #[error("input outside the compressor domain")]
    OutsideDomain,
    #[error("stream too short to decide at precision {0}")]
    StreamTooShort(u32),
    #[error("prefix too short: need {needed} bits, have {have}")]
    PrefixTooShort { needed: usize, have: usize },
    #[error("value {0} is outside the range of the map")]
    OutsideRange(String),
    #[error("branch index {index} out of range at level {level} (arity {arity})")]
    BranchOutOfRange {
        level: usize,
        index: usize,
        arity: usize,
    },
    #[error("trajectory inconsistent at level {0}")]
    InconsistentTrajectory(usize),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("sample point collides with a singular point")]
    SampleHitsSingularity,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}
