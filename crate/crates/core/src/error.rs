use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("grid of {cells} cells exceeds the cap of {cap} cells")]
    ResourceLimit { cells: u64, cap: u64 },
    #[error("grid dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(u32, u32, u32, u32),
    #[error("malformed grid data: {0}")]
    MalformedGrid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
