use alloc::string::String;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("budget order: partition data needs B < E (got B = {b}, E = {e})")]
    BudgetOrder { b: Rational, e: Rational },
    #[error("invalid game configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("allocation {value} outside [0, {budget}]")]
    OutOfRange { value: Rational, budget: Rational },
    #[error("only unit battlefield values are supported here (v1 = {v1}, v2 = {v2})")]
    UnsupportedValues { v1: Rational, v2: Rational },
    #[error("boundary case r_B = d is excluded from the security-strategy conditions")]
    BoundaryCase,
    #[error("strategy budget {got} does not match the team budget {expected}")]
    BudgetMismatch { expected: Rational, got: Rational },
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error("k1 = {k1} is not a factor of m = {m}")]
    NotAFactor { k1: u64, m: u64 },
    #[error("division B1 = {b1} is outside the feasible band [{lo}, {hi}] for k1 = {k1}")]
    InfeasibleDivision {
        k1: u64,
        b1: Rational,
        lo: Rational,
        hi: Rational,
    },
    #[error("sampler precondition violated: {0}")]
    InfeasibleGap(String),
    #[error("division B1 = {b1} exceeds B/2 for B = {b}")]
    BadDivision { b1: u64, b: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("instance too large for the grid oracle: B1 = {0} (max 3)")]
    TooLarge(u64),
    #[error("internal error: {0}")]
    Internal(String),
}
