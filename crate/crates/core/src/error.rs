use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Index out of range, missing or extra table entries, inconsistent sizes.
    #[error("structural error: {0}")]
    Structure(String),

    #[error("empty base: a groupoid needs at least one object")]
    EmptyBase,

    #[error("table is not a group ({axiom}) at {witness:?}")]
    NotAGroup { axiom: String, witness: Vec<usize> },

    /// An input object failed its own validation.
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("not vacant: top {top}, right {right} has {} fillers", fillers.len())]
    NotVacant {
        top: usize,
        right: usize,
        fillers: Vec<usize>,
    },

    #[error("not an exact factorization: arrow {arrow} has {count} factorizations")]
    NotExact { arrow: usize, count: usize },

    #[error("not a subgroupoid: {0}")]
    NotSubgroupoid(String),

    #[error("diagonal relation is not an equivalence: witness {0:?}")]
    DiagonalNotEquivalence(Vec<usize>),

    #[error("cocycle pair cannot be embedded: {0}")]
    Unembeddable(String),

    #[error("invalid field specification: {0}")]
    FieldSpec(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("truncated complex: {0}")]
    Truncation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("invalid gauge function: {0}")]
    InvalidGauge(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("{kind} error: {message}")]
    Format { kind: FormatErrorKind, message: String },
}

/// Reasons a document is rejected, each with its own stable code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormatErrorKind {
    Syntax,
    Version,
    UnknownKind,
    Schema,
    Duplicate,
    Range,
    /// Stored redundant data disagrees with what it re-derives to.
    Inconsistent,
}

impl FormatErrorKind {
    pub fn code(&self) -> &'static str {
        match self {
            FormatErrorKind::Syntax => "syntax",
            FormatErrorKind::Version => "version",
            FormatErrorKind::UnknownKind => "unknown_kind",
            FormatErrorKind::Schema => "schema",
            FormatErrorKind::Duplicate => "duplicate",
            FormatErrorKind::Range => "range",
            FormatErrorKind::Inconsistent => "inconsistent",
        }
    }
}

impl std::fmt::Display for FormatErrorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structure<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Structure(msg.into()))
}
