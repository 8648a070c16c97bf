use thiserror::Error;

/// Errors raised while building or transforming finite residuated lattices.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("carrier must be non-empty")]
    EmptyCarrier,
    #[error("unit index {unit} out of range for carrier of size {size}")]
    UnitOutOfRange { unit: usize, size: usize },
    #[error("table `{table}` has {len} entries, expected {expected}")]
    WrongShape {
        table: &'static str,
        len: usize,
        expected: usize,
    },
    #[error("table `{table}` entry at ({row}, {col}) is {value}, out of range for size {size}")]
    EntryOutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("order is not a lattice: {0}")]
    NotALattice(String),
    #[error("multiplication is not residuated: no maximum for {0}")]
    NotResiduated(String),
    #[error("subset {0:?} is not a normal filter")]
    NotNormalFilter(Vec<usize>),
    #[error("direct product would have {size} elements, cap is {cap}")]
    ProductTooLarge { size: usize, cap: usize },
    #[error("direct product of an empty family")]
    EmptyProduct,
    #[error("enumeration size {0} out of range (1..={max})", max = crate::reslat::ENUMERATION_CAP)]
    EnumerationOutOfRange(usize),
    #[error("index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
}

/// Errors on frames (I0, I1, lambda).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameError {
    #[error("index {index} out of range for I0 of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("lambda is not injective: {first} and {second} both map to {target}")]
    NotInjective { first: usize, second: usize, target: usize },
    #[error("index {0} listed twice in I1")]
    DuplicateDomain(usize),
    #[error("lambda domain does not match I1 at index {0}")]
    DomainMismatch(usize),
    #[error("{0:?} is not a connected component (or union of components)")]
    NotAComponent(Vec<usize>),
    #[error("operation requires a finite frame")]
    NotFinite,
    #[error("index {index} is not in level set I_{level}")]
    NotInLevel { index: i64, level: usize },
    #[error("lambda power requires n <= m, got n = {n}, m = {m}")]
    LevelOrder { m: usize, n: usize },
}

/// Errors raised by kite operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KiteError {
    #[error("level {level} exceeds working depth {max}")]
    DepthExceeded { level: usize, max: usize },
    #[error("element at level {level} has {len} values, level set has {expected}")]
    WrongArity { level: usize, len: usize, expected: usize },
    #[error("value {value} out of range for lattice of size {size}")]
    ValueOutOfRange { value: usize, size: usize },
    #[error("index {index} is not in level set I_{level}")]
    IndexNotInLevel { index: i64, level: usize },
    #[error("invalid filter parameters: {0}")]
    InvalidFilter(String),
    #[error("frame does not match the requested structural check: {0}")]
    FrameMismatch(String),
    #[error(transparent)]
    Frame(#[from] FrameError),
}

/// Errors raised by the truncated-product embeddings.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("truncation bound {k} is smaller than level {level}")]
    TruncationTooSmall { k: usize, level: usize },
    #[error("support index {index} lies outside the window of radius {radius}")]
    SupportOutsideWindow { index: i64, radius: usize },
    #[error("source element lives on the wrong symbolic frame")]
    WrongFrame,
    #[error("elements come from different truncated products")]
    Mismatch,
    #[error(transparent)]
    Kite(#[from] KiteError),
}

/// Errors raised by frame transformations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("map has {len} entries, source I0 has {expected}")]
    NotTotal { len: usize, expected: usize },
    #[error("t({index}) = {value} is out of range for target of size {size}")]
    OutOfRange { index: usize, value: usize, size: usize },
    #[error("map kind does not fit these frames: {0}")]
    Unsupported(String),
    #[error("map is not a frame transformation: {0}")]
    Invalid(String),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Kite(#[from] KiteError),
}

/// A parse failure with a 1-based source position.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}
