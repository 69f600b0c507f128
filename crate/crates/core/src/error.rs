use thiserror::Error;

/// Errors for invalid parameters. All operations validate their ranges before
/// computing anything, so an `Err` never leaves partial state behind.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus must be at least {min}, got {g}")]
    GenusOutOfRange { g: usize, min: usize },

    #[error("separating type h={h} out of range for genus {g} (need {lo} <= h <= {hi})")]
    SeparatingTypeOutOfRange { g: usize, h: usize, lo: usize, hi: usize },

    #[error("h={h} does not divide g={g}")]
    NonDivisor { g: usize, h: usize },

    #[error("curve index {index} out of range for genus {g} (need 1 <= index <= {max})")]
    CurveIndexOutOfRange { g: usize, index: usize, max: usize },

    #[error("generator index {index} exceeds alphabet size {alphabet_size}")]
    LetterOutOfAlphabet { index: usize, alphabet_size: usize },

    #[error("generator index must be at least 1")]
    ZeroGeneratorIndex,

    #[error("alphabet size must be at least 1, got {n}")]
    EmptyAlphabet { n: usize },

    #[error("words use different alphabet sizes ({left} vs {right})")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("empty parameter range: {what}")]
    EmptyRange { what: String },
}

pub type Result<T> = std::result::Result<T, Error>;
