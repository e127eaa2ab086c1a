use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An index or parameter lies outside the range where the object exists.
    #[error("domain error: {0}")]
    Domain(String),

    /// The direct central-factorial route only covers even `2j - k`.
    #[error("parity error: 2j - k = {two_j} - {k} is odd")]
    Parity { two_j: u32, k: u32 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("axis ({x}, {y}, {z}) is not a unit vector")]
    NonUnitAxis { x: f64, y: f64, z: f64 },

    /// The eigendecomposition oracle found a spectrum that does not match
    /// `{j, j-1, ..., -j}`.
    #[error("oracle failure: eigenvalue {found} is {distance:e} away from the spin spectrum")]
    OracleFailure { found: f64, distance: f64 },

    #[error("invalid request: {0}")]
    InvalidRequest(String),
}
