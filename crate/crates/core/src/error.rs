use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration {parts:?}: {reason}")]
    InvalidConfiguration {
        parts: Vec<i64>,
        reason: &'static str,
    },

    #[error("invalid Young diagram {rows:?}: {reason}")]
    InvalidDiagram { rows: Vec<u32>, reason: &'static str },

    #[error("diagram has {rows} rows but the graph allows at most {d}")]
    TooManyRows { rows: usize, d: usize },

    #[error("vertex does not belong to the graph: {0}")]
    ForeignVertex(String),

    #[error("cannot parse step word {word:?}: unexpected letter {letter:?}")]
    BadWord { word: String, letter: char },

    #[error("not a permutation of 1..{len}: {seq:?}")]
    NotAPermutation { seq: Vec<u32>, len: usize },

    #[error("{what} = {value} exceeds the enumeration bound {bound}")]
    OverBudget {
        what: &'static str,
        value: u64,
        bound: u64,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("near-degenerate spectrum: Vandermonde determinant {0:e} below threshold")]
    DegenerateSpectrum(f64),
}
