use thiserror::Error;

use crate::psido::HalfInt;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot divide by non-unit {0}")]
    NonUnit(String),
    #[error("symbols over different variables cannot be combined")]
    MixedVariable,
    #[error("trace not determined: trusted floor {0} is above order -1")]
    TraceUndetermined(HalfInt),
    #[error("truncation too shallow: needed trusted order {needed}, have floor {have}")]
    FloorTooShallow { needed: HalfInt, have: HalfInt },
    #[error("order {0} is not allowed here")]
    BadOrder(HalfInt),
    #[error("{0}")]
    Domain(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("mixed-class functional: {0}")]
    MixedFunctional(String),
    #[error("unknown suite {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
