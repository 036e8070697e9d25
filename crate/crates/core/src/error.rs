use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("{what}: n = {n} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },
    #[error("graph has an asteroidal triple")]
    NotAtFree,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is a clique")]
    Clique,
    #[error("set system is not an alignment")]
    NotAlignment,
    #[error("swap at position {0} breaks the order")]
    InvalidSwap(usize),
    #[error("empty graph")]
    Empty,
    #[error("no level plan found")]
    NoPlan,
}

pub type Result<T> = std::result::Result<T, Error>;
