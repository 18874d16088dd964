use thiserror::Error;

use crate::diagrams::{Diagram, Level};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator vanishes at q = exp({sign}*pi*i/{ell})")]
    DenominatorVanishes { ell: u32, sign: i8 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("level {0} is too small for this operation")]
    LevelTooSmall(Level),
    #[error("level {0} is not supported here")]
    UnsupportedLevel(Level),
    #[error("{diagram} is not in Gamma({level})")]
    NotInGamma { diagram: Diagram, level: Level },
    #[error("{diagram} is not in Lambda({size}, {level})")]
    NotInLambda {
        diagram: Diagram,
        size: usize,
        level: Level,
    },
    #[error("length {length} minus |{diagram}| is not a non-negative even integer")]
    ParityViolation { length: usize, diagram: Diagram },
    #[error("tableaux have different lengths ({0} vs {1})")]
    ShapeMismatch(usize, usize),
    #[error("first tableau has a shorter first row than the second ({0} < {1})")]
    OrderViolation(usize, usize),
    #[error("invalid oscillating tableau: {0}")]
    InvalidOscTableau(String),
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: i64, strands: usize },
    #[error("crossing count {crossings} exceeds cap {cap}")]
    CapExceeded { crossings: usize, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
