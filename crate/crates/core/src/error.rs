use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a period of {expected} symbols, found {found}")]
    InvalidPeriod { expected: usize, found: usize },
    #[error("invalid digit {digit:?} at offset {offset}")]
    InvalidDigit { digit: char, offset: usize },
    #[error("exponent {exponent} exceeds the limit of {max}")]
    ExponentTooLarge { exponent: u32, max: u32 },
    #[error("sequences have different periods (2^{left} vs 2^{right})")]
    PeriodMismatch { left: u32, right: u32 },
    #[error("a period-1 sequence cannot be halved")]
    CannotHalve,
    #[error("invalid support: {0}")]
    InvalidSupport(&'static str),
    #[error("closed form does not apply: {0}")]
    LemmaPreconditionViolated(&'static str),
    #[error("search would enumerate {0} error patterns, over budget")]
    SearchTooLarge(u128),
    #[error("k_min is undefined for the all-zero sequence")]
    UndefinedForZeroSequence,
    #[error("no k <= {cap} lowers the linear complexity")]
    NotFoundWithinCap { cap: usize },
    #[error("linear complexity {l} is outside 0..=2^{n}")]
    InvalidL { n: u32, l: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(&'static str),
    #[error("census too large: {0}")]
    TooLarge(&'static str),
    #[error("no closed-form counting function for k={k}, class {class}")]
    NoFormulaAvailable { k: u32, class: &'static str },
}
