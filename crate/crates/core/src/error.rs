use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table length {len} is not a power of two")]
    NotPowerOfTwo { len: usize },

    #[error("invalid character {ch:?} at position {pos}")]
    InvalidChar { pos: usize, ch: char },

    #[error("hex table must start with \"0x\"")]
    MissingHexPrefix,

    #[error("empty table text")]
    Empty,

    #[error("variable counts differ: {left} vs {right}")]
    VarCountMismatch { left: u32, right: u32 },

    #[error("{n} variables exceeds the configured maximum of {max}")]
    TooManyVars { n: u32, max: u32 },

    #[error("a table on zero variables has no halves")]
    NoHalves,

    #[error("point index {index} out of range for {n} variables")]
    IndexOutOfRange { index: u64, n: u32 },

    #[error("nonlinearity is undefined for functions of zero variables")]
    ZeroVars,

    #[error("brute-force nonlinearity supports 1..={max} variables, got {n}")]
    BruteForceRange { n: u32, max: u32 },

    #[error("affine mask {mask:#x} does not fit in {n} variables")]
    MaskOutOfRange { mask: u64, n: u32 },

    #[error("{what} must lie in {min}..={max}, got {value}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        min: u64,
        max: u64,
    },

    #[error("{what} requires an odd variable count, got {k}")]
    EvenCount { what: &'static str, k: u32 },

    #[error("closed form for {what} overflows 64-bit arithmetic")]
    Overflow { what: &'static str },

    #[error("closed forms disagree for {what}: {left} != {right}")]
    FormulaMismatch {
        what: &'static str,
        left: u64,
        right: u64,
    },

    #[error("malformed run-length token {token:?}")]
    RunLength { token: String },
}
