use thiserror::Error;

/// Errors raised across the crate.
///
/// Every variant maps to a stable machine-readable code (see [`Error::code`]) that
/// the command-line frontend forwards in its JSON error payloads.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial has no root set")]
    ZeroPolynomial,
    #[error("endpoint root")]
    EndpointRoot,
    #[error("empty interval: lower end must be below upper end")]
    EmptyInterval,
    #[error("sign of zero")]
    SignOfZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("degenerate form")]
    DegenerateForm,
    #[error("orderings of a function field are not enumerable; use StepFunction")]
    FunctionFieldOrderings,
    #[error("twist not trivializable at point {0}")]
    TwistNotTrivializable(String),
    #[error("basis mismatch: {0} vs {1}")]
    BasisMismatch(String, String),
    #[error("push-forward requires a proper scheme")]
    NotProper,
    #[error("push-forward is undefined for this twist: {0}")]
    NoPushforward(String),
    #[error("unsupported scheme: {0}")]
    UnsupportedScheme(String),
    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("invalid uniformizer: {0}")]
    InvalidUniformizer(String),
    #[error("search exhausted at height bound {0}")]
    SearchExhausted(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroPolynomial => "zero_polynomial",
            Error::EndpointRoot => "endpoint_root",
            Error::EmptyInterval => "empty_interval",
            Error::SignOfZero => "sign_of_zero",
            Error::FieldMismatch(_) => "field_mismatch",
            Error::DegenerateForm => "degenerate_form",
            Error::FunctionFieldOrderings => "function_field_orderings",
            Error::TwistNotTrivializable(_) => "twist_not_trivializable",
            Error::BasisMismatch(..) => "basis_mismatch",
            Error::NotProper => "not_proper",
            Error::NoPushforward(_) => "no_pushforward",
            Error::UnsupportedScheme(_) => "unsupported_scheme",
            Error::NotIrreducible(_) => "not_irreducible",
            Error::InvalidUniformizer(_) => "invalid_uniformizer",
            Error::SearchExhausted(_) => "search_exhausted",
            Error::Parse(_) => "parse",
            Error::Invalid(_) => "invalid_input",
            Error::Unsupported(_) => "unsupported",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
