use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational {0:?}: expected [-]digits[/positive digits]")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: {left} vs {right}")]
    DimensionMismatch {
        context: &'static str,
        left: usize,
        right: usize,
    },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("entry grid has {got} entries, expected {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, got: usize },

    /// 0-based indices of the first entry with `gram[i][j] != -gram[j][i]`.
    #[error("gram matrix is not skew-symmetric at ({i}, {j})")]
    NotSkewSymmetric { i: usize, j: usize },

    #[error("{what} index {index} out of range (count {count})")]
    IndexOutOfRange {
        what: &'static str,
        index: i64,
        count: usize,
    },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("block-reduced structure checks require a partition passing block separation: {0}")]
    BlockSeparationRequired(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error(transparent)]
    Rational(#[from] ParseRationalError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
