use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error: {msg}")]
pub struct ParseError {
    pub msg: String,
}

impl ParseError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self { msg: msg.into() }
    }
}

/// Errors raised by the symbolic layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("algebra mismatch: {left} vs {right}")]
    Mismatch { left: String, right: String },
    #[error("generator index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("rewriting exceeded the step budget of {0} rule applications")]
    StepBudgetExceeded(usize),
    #[error("angle {0} outside [0, 2pi)")]
    AngleOutOfRange(f64),
    #[error("unsupported U_q generator: {0}")]
    UnsupportedGenerator(String),
    #[error("minor index sets differ in size ({rows} rows, {cols} columns)")]
    MinorSize { rows: usize, cols: usize },
    #[error("{0}")]
    Invalid(String),
}

/// Errors raised by the numerical layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepError {
    #[error("invalid truncation config: {0}")]
    Config(String),
    #[error("leak risk: polynomial degree {degree} plus vector height {height} exceeds safe degree {safe}")]
    LeakRisk { degree: usize, height: usize, safe: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("slot {slot} out of range for a {slots}-slot operator")]
    SlotOutOfRange { slot: usize, slots: usize },
    #[error("unexpected factor at slot {slot}: {found}")]
    UnexpectedFactor { slot: usize, found: String },
    #[error("word is not reduced: {0:?}")]
    NotReduced(Vec<usize>),
    #[error("operator is not a contraction (norm {0})")]
    NotContraction(f64),
    #[error("norm estimate did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
