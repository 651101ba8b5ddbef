use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("field mismatch: r{0} vs r{1}")]
    FieldMismatch(u32, u32),
    #[error("constant factor")]
    ConstantFactor,
    #[error("not an [a,b]-closed polynomial: P(a) != P(b)")]
    NotClosed,
    #[error("polynomial {0} is not in the space P (value at an endpoint is nonzero)")]
    NotInP(&'static str),
    #[error("degenerate interval: a = b")]
    DegenerateInterval,
    #[error("kernel not stabilized: dimension {at_imax} at I_max={imax}, {at_more} at I_max={more}")]
    KernelNotStabilized { imax: usize, at_imax: usize, more: usize, at_more: usize },
    #[error("frequencies not coprime: gcd({0}, {1}) != 1")]
    FrequenciesNotCoprime(u32, u32),
    #[error("excluded index {index} in {which} has a nonzero coefficient")]
    ExcludedIndex { which: &'static str, index: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
