use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `(a, b)` is not in the family `-a + 1 <= b <= -2`.
    #[error("OutOfRange: b={b} not in [{lo}, -2] for a={a}", lo = 1 - a)]
    OutOfRange { a: i64, b: i64 },

    #[error("PrecisionExhausted: could not certify result at {bits} bits")]
    PrecisionExhausted { bits: u32 },

    #[error("RealConjugates: P(x) = x^3 - {a}x^2 - ({b})x - 1 has three real roots")]
    RealConjugates { a: i64, b: i64 },

    #[error("IndexBelowMinusFour: T_{0} is undefined")]
    IndexBelowMinusFour(i64),

    #[error("InadmissibleDigits: {0}")]
    InadmissibleDigits(String),

    #[error("DegenerateMap: conjugation map is singular at current precision")]
    DegenerateMap,

    #[error("VerificationFailed: {} anomalies: {}", .0.len(), .0.join("; "))]
    VerificationFailed(Vec<String>),

    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
