use thiserror::Error;

/// Errors raised by the chaotic maps and the lambda stream.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChaosError {
    #[error("tan/cot pole: argument {angle} is within tolerance of a singularity")]
    Pole { angle: f64 },
    #[error("domain error: map input {x} is outside the admissible range")]
    Domain { x: f64 },
    #[error("overflow: map produced a non-finite value from input {x}")]
    Overflow { x: f64 },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },
    #[error("lambda stream degenerate: two consecutive map failures at state {state}")]
    Degenerate { state: f64 },
}

/// Errors raised by the wavelet transforms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WaveletError {
    #[error("slope {0} outside [-2, 2]")]
    LambdaRange(f64),
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("resolution error: {0}")]
    Resolution(String),
    #[error("transform matrix is singular")]
    Singular,
    #[error("no invertible matrix after {attempts} redraws")]
    SingularAfterRedraws { attempts: usize },
    #[error(transparent)]
    Chaos(#[from] ChaosError),
}

/// Errors raised by the cipher pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CipherError {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("non-finite value at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("literal mode cannot be decrypted without the plaintext; use keystream mode")]
    LiteralModeDecrypt,
    #[error(transparent)]
    Wavelet(#[from] WaveletError),
    #[error(transparent)]
    Chaos(#[from] ChaosError),
}

/// Errors raised by the statistics battery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("images differ in size: {0}x{1} vs {2}x{3}")]
    SizeMismatch(usize, usize, usize, usize),
    #[error("correlation undefined: a marginal has zero variance")]
    ZeroVariance,
    #[error("image too small to sample adjacent pairs in this direction")]
    TooSmall,
    #[error("empty image")]
    Empty,
    #[error("precision must lie in (0, 1), got {0}")]
    Precision(f64),
}

/// Errors raised while reading images or key files.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed PGM header: {0}")]
    Header(String),
    #[error("unsupported maxval {0} (only 255 is accepted)")]
    Maxval(u32),
    #[error("truncated payload: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("image is {width}x{height}; cipher commands need a square power-of-two image of side >= 8")]
    Shape { width: usize, height: usize },
    #[error("key file line {line}: {message}")]
    Key { line: usize, message: String },
    #[error("key file: {0}")]
    KeyStructure(String),
}
