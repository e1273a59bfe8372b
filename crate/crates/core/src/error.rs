use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("n must be at least 1, got {0}")]
    InvalidScale(u32),

    #[error("the spectral scaling p must be odd and at least 3, got {0}")]
    InvalidScaling(u32),

    #[error("this operation needs the spectral scaling p")]
    MissingScaling,

    #[error("this operation needs {expected} n, got n = {n}")]
    Parity { expected: &'static str, n: u32 },

    #[error("this operation is only defined for n = {required}, p = {required_p}")]
    FixedParams { required: u32, required_p: u32 },

    #[error("the number of product terms must be positive")]
    ZeroTerms,

    #[error("the number of samples must be positive")]
    ZeroSamples,

    #[error("argument must be finite, got {0}")]
    NonFinite(f64),

    #[error("tolerance must be a positive finite number, got {0}")]
    InvalidTolerance(f64),

    #[error("word {0:?} does not lie in Γ₀ (its leading digit is not 1)")]
    NotInGammaZero(String),

    #[error("invalid digit word {0:?}")]
    InvalidWord(String),

    #[error("a digit word holds at most {max} digits, got {got}")]
    TooManyDigits { max: u32, got: u32 },

    #[error("cannot parse {input:?} as a frequency: {reason}")]
    ParseFrequency { input: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
