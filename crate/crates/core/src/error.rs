use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed tree encoding at offset {offset}: {reason}")]
    TreeParse { offset: usize, reason: &'static str },

    #[error("malformed word at offset {offset}: {reason}")]
    WordParse { offset: usize, reason: String },

    #[error("malformed tree pair: {0}")]
    PairParse(String),

    #[error("caret index {index} out of range (tree has {count} carets)")]
    CaretIndex { index: usize, count: usize },

    #[error("trees have unequal caret counts ({negative} and {positive})")]
    UnequalCarets { negative: usize, positive: usize },

    #[error("tree pair is not reduced")]
    Unreduced,

    #[error("invalid normal form: {0}")]
    NormalForm(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid penalty tree: {0}")]
    InvalidPenaltyTree(String),

    #[error("element has {carets} carets, above the search bound of {bound}")]
    SearchBound { carets: usize, bound: usize },

    #[error("resource budget exhausted: {0}")]
    Budget(String),
}

impl Error {
    /// True for errors caused by a computation outgrowing its configured limits.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::SearchBound { .. } | Error::Budget(_))
    }

    /// True for errors caused by unparseable user input.
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::TreeParse { .. } | Error::WordParse { .. } | Error::PairParse(_)
        )
    }
}
