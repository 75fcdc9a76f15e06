use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is not rational: {0}")]
    NotRational(String),
    #[error("reciprocal of a series that vanishes within its window")]
    ZeroReciprocal,
    #[error("coefficient x^{requested} lies outside the known window [{start}, {end})")]
    WindowExhausted {
        requested: i64,
        start: i64,
        end: i64,
    },
    #[error("rational function is not a polynomial in y: {0}")]
    NotPolynomial(String),
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("spectrum is empty")]
    EmptySpectrum,
    #[error("class function takes a non-integral value {value} on {class}")]
    NonIntegralValue { class: String, value: String },
    #[error("search cap {cap} exceeded")]
    SearchCapExceeded { cap: u64 },
    #[error("enumeration cap {cap} exceeded (needs {needed} states)")]
    CapExceeded { cap: u64, needed: u64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    /// Stable short identifier, used for JSON error objects and FFI codes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::NotRational(_) => "not_rational",
            Error::ZeroReciprocal => "zero_reciprocal",
            Error::WindowExhausted { .. } => "window_exhausted",
            Error::NotPolynomial(_) => "not_polynomial",
            Error::InternalMismatch(_) => "internal_mismatch",
            Error::Parse { .. } => "parse",
            Error::EmptySpectrum => "empty_spectrum",
            Error::NonIntegralValue { .. } => "non_integral_value",
            Error::SearchCapExceeded { .. } => "search_cap_exceeded",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::InvalidInput(_) => "invalid_input",
        }
    }
}
