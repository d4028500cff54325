use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("registry record {record}: {message}")]
    Parse { record: String, message: String },
    #[error("index {index} outside table range 0..={max}")]
    Range { index: i64, max: usize },
    #[error("inadmissible element: {0}")]
    Inadmissible(String),
    #[error("brute-force enumeration refused for N = {n}; the bound is {max}")]
    BruteBound { n: u64, max: u64 },
    #[error("certificate clause {clause} failed at {element}: {detail}")]
    Certificate {
        clause: String,
        element: String,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
