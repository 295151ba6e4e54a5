use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidCoxeterMatrix(String),
    #[error("invalid Omega: {0}")]
    InvalidOmega(String),
    #[error("unsupported label {0}: only 2, 3, 4, 6 and infinity outside dihedral mode")]
    UnsupportedLabel(u32),
    #[error("unknown letter '{0}'")]
    UnknownLetter(String),
    #[error("datum mismatch: {0}")]
    DatumMismatch(String),
    #[error("group is infinite; a radius bound is required")]
    InfiniteGroup,
    #[error("no affine realization attached to {0}")]
    NoRealization(String),
    #[error("interval of size {size} exceeds the bound {bound}")]
    IntervalTooLarge { size: usize, bound: usize },
    #[error("specialization at r = 0")]
    ZeroRoot,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("missing structure constant: {0}")]
    MissingEntry(String),
    #[error("algebra is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("field extension required: minimal polynomial {0} does not split")]
    NonSplit(String),
    #[error("not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("malformed filtration: {0}")]
    MalformedFiltration(String),
    #[error("not an algebra morphism: {0}")]
    NotAMorphism(String),
    #[error("memory budget exceeded: {required} entries needed, budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("unresolved conjugacy: {0}")]
    Unresolved(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("line {line}: {msg}")]
    CacheLine { line: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
