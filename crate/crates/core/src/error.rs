use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed schema document: {0}")]
    MalformedSchema(String),
    #[error("attribute `{name}`: {reason}")]
    InvalidAttribute { name: String, reason: String },
    #[error("schema: {0}")]
    InvalidSchema(String),

    #[error("csv: {0}")]
    Csv(String),
    #[error("csv header mismatch: {0}")]
    HeaderMismatch(String),
    #[error("csv row {row}: expected {expected} fields, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("csv row {row}, column `{column}`: cannot parse `{cell}` as a finite number")]
    BadNumber {
        row: usize,
        column: String,
        cell: String,
    },
    #[error("csv row {row}, column `{column}`: unknown level `{token}`")]
    UnknownLevel {
        row: usize,
        column: String,
        token: String,
    },
    #[error("dataset has no rows")]
    EmptyDataset,

    #[error("model document version `{found}` is not supported (expected `{expected}`)")]
    VersionMismatch { found: String, expected: String },
    #[error("corrupted model document: {0}")]
    CorruptModel(String),

    #[error("no samples")]
    NoSamples,
    #[error("unknown level `{0}`")]
    UnknownToken(String),
    #[error("attribute `{name}`: value does not match kind {kind}")]
    TypeMismatch { name: String, kind: &'static str },
    #[error("attribute `{name}`: model does not match mode {mode}")]
    ModelMismatch { name: String, mode: &'static str },
    #[error("record has {found} values, expected {expected}")]
    RecordWidth { found: usize, expected: usize },
    #[error("no comparable attributes")]
    NoComparableAttributes,
    #[error("total weight of comparable attributes is zero")]
    ZeroWeight,

    #[error("pair ({i}, {j}): {source}")]
    Pair {
        i: usize,
        j: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("condensed index ({i}, {j}) out of range for n = {n}")]
    IndexOutOfRange { n: usize, i: usize, j: usize },
    #[error("matrix needs at least 2 records, got {0}")]
    TooFewRecords(usize),

    #[error("schema has no target attribute")]
    NoTarget,
    #[error("no training rows with a non-missing target")]
    NoUsableRows,
    #[error("attribute `{0}` has no non-missing values")]
    EmptyAttribute(String),
    #[error("k must be at least 1")]
    InvalidK,
    #[error("row {row}: {source}")]
    Row {
        row: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("matrix file: {0}")]
    MatrixFormat(String),
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn attr(name: &str, reason: impl Into<String>) -> Self {
        Error::InvalidAttribute {
            name: name.to_string(),
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
