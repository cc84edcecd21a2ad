use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not square")]
    NotSquare,
    #[error("table entry at row {row}, column {col} is out of range")]
    EntryOutOfRange { row: usize, col: usize },
    #[error("row {0} is not a permutation")]
    RowNotPermutation(usize),
    #[error("column {0} is not a permutation")]
    ColNotPermutation(usize),
    #[error("symbol {symbol} is out of range for order {order}")]
    SymbolOutOfRange { symbol: usize, order: usize },
    #[error("operation is only supported for order 4, got order {0}")]
    OrderNotSupported(usize),
    #[error("order mismatch: quasigroup has order {quasigroup}, string has order {string}")]
    OrderMismatch { quasigroup: usize, string: usize },
    #[error("empty string")]
    EmptyString,
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("index leader i{index} is out of range for strings of length {len}")]
    IndexLeaderOutOfRange { index: usize, len: usize },
    #[error("budget exceeded: {required} evaluations required, budget is {budget}")]
    BudgetExceeded { required: u64, budget: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("syntax error on line {line}: {message}")]
    Syntax { line: usize, message: String },
}

impl Error {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            message: message.into(),
        }
    }
}
