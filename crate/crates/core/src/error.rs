use thiserror::Error;

/// Errors raised when an operation is asked for inputs outside the range
/// where its defining formula is valid.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NotPrime(u64),

    #[error("{0} requires an odd prime, got p = 2")]
    RequiresOddPrime(&'static str),

    #[error("r_m is undefined for m = 0")]
    TopDigitOfZero,

    #[error("Fibonacci numbers are indexed from 1")]
    FibonacciIndexZero,

    #[error("the closed form requires 1 <= n <= 2p-2, got n = {n} with p = {p}")]
    ClosedFormDegree { n: u64, p: u64 },

    #[error("the low-degree tables cover n in {{1, 2, 3}}, got n = {0}")]
    NotLowDegree(u64),

    #[error("requires m1 >= m2, got m1 = {m1}, m2 = {m2}")]
    WeightOrder { m1: u64, m2: u64 },

    #[error("the Specht translation requires 0 <= n <= 2p-4, got n = {n} with p = {p}")]
    SpechtDegree { n: u64, p: u64 },

    #[error("a two-part partition needs lambda1 >= lambda2, got ({lambda1}, {lambda2})")]
    PartitionOrder { lambda1: u64, lambda2: u64 },

    #[error("simple-module labels must share the same p and s")]
    LabelMismatch,

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("invalid system query: {0}")]
    InvalidQuery(String),
}

pub type Result<T> = std::result::Result<T, Error>;
