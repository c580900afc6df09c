use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the toolkit.
///
/// `CapExceeded` and `GuardTripped` are resource guards (a caller asked for
/// more work than the configured limits allow); everything else is a
/// contract violation in the inputs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("bit width must be at least 3, got {0}")]
    BitWidthTooSmall(u32),

    #[error("bit width {0} is even; the last-generator closed form is stated for odd widths only (use the even-width override)")]
    EvenBitWidth(u32),

    #[error("state {value} does not fit in {bits} bits")]
    StateOutOfRange { value: String, bits: u32 },

    #[error("exhaustive enumeration needs a 2^{n}-bit visited mask, above the cap of n <= {cap}")]
    CapExceeded { n: u32, cap: u32 },

    #[error("sweep guard tripped: {0}")]
    GuardTripped(String),

    #[error("state has {state_bits} bits but the encoding scheme expects {scheme_bits}")]
    WidthMismatch { state_bits: u32, scheme_bits: u32 },

    #[error("bit pattern '{pattern}' does not have the declared width {width}")]
    PatternWidthMismatch { pattern: String, width: u32 },

    #[error("exploration step {0} is odd; odd steps leave the even generator lattice (pass the odd-step override to force it)")]
    OddDelta(String),

    #[error("alpha {0} is not a generator (not the minimal element of its cycle)")]
    NotAGenerator(String),

    #[error("unknown problem id '{0}'")]
    UnknownProblem(String),

    #[error("problem '{id}' has fixed dimension {expected}, got {got}")]
    DimensionMismatch { id: String, expected: usize, got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for resource-guard errors, which map to a distinct process exit
    /// code in the CLI.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::GuardTripped(_))
    }
}
