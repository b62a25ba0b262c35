use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input text contained a character other than `0`, `1` or whitespace.
    #[error("invalid character {found:?} at position {position}")]
    Parse { position: usize, found: char },

    /// A numeric argument was outside its documented range.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A rigged configuration could not be inverted to a ball configuration.
    #[error("rigged configuration is not invertible: {0}")]
    InfeasibleRigging(String),

    /// Slot decomposition data outside the domain of the reconstruction map.
    #[error("slot data is not reconstructible: {0}")]
    InfeasibleSlots(String),
}

pub type Result<T> = std::result::Result<T, Error>;
