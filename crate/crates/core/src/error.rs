use thiserror::Error;

use crate::group::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("malformed chain literal: {0}")]
    ChainSyntax(String),
    #[error("invalid monomial {monomial} for group {group}")]
    InvalidMonomial { monomial: String, group: String },
    #[error("chains live over different groups ({0} vs {1})")]
    GroupMismatch(String, String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("homology group is infinite")]
    InfiniteGroup,
    #[error("degree {0} is below 2")]
    DegreeTooSmall(usize),
    #[error("bar complex needs {cells} cells in degree {degree}, cap is {cap}")]
    CapExceeded { degree: usize, cells: u128, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
