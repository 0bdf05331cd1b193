use thiserror::Error;

/// Every failure the library can report.
///
/// The variants map one-to-one onto the CLI exit-code classes: parse errors,
/// unsupported ideal classes, missing algebraic extensions, and everything
/// else.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("evaluation hit a pole at x = {at}")]
    Pole { at: i64 },

    #[error("extension needed: irreducible factor {factor} over Q blocks {context}")]
    ExtensionNeeded { factor: String, context: String },

    #[error("decomposition unsupported: {0}")]
    DecompositionUnsupported(String),

    #[error("radical computation unsupported: {0}")]
    RadicalUnsupported(String),

    #[error("degree slice not sigma^{delta}-stable: {detail}")]
    SliceNotStable { delta: usize, detail: String },

    #[error("integer too large to factor by the built-in methods: {0}")]
    FactorizationTooHard(String),

    #[error("cost limit exceeded: {0}")]
    CostLimit(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_unsupported_class(&self) -> bool {
        matches!(self, Error::DecompositionUnsupported(_) | Error::RadicalUnsupported(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
