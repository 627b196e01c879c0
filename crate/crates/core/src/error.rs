use std::time::Duration;

use thiserror::Error;

/// Which clause of the good-pair definition a candidate violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// W lies inside the prolongation of V.
    Containment,
    /// W projects dominantly onto V.
    Projection,
    /// The generic fibre of W over V is an affine subspace.
    AffineFiber,
}

impl Condition {
    pub fn label(self) -> &'static str {
        match self {
            Condition::Containment => "(i)",
            Condition::Projection => "(ii)",
            Condition::AffineFiber => "(iii)",
        }
    }
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let what = match self {
            Condition::Containment => "W is not contained in the prolongation of V",
            Condition::Projection => "W does not project generically onto V",
            Condition::AffineFiber => "generic fibre is not an affine subspace",
        };
        write!(f, "{} {}", self.label(), what)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("ground field mismatch: {0} vs {1}")]
    FieldMismatch(&'static str, &'static str),

    #[error("division by zero")]
    DivisionByZero,

    #[error("resource limit exceeded after {steps} reduction steps ({elapsed:?})")]
    ResourceLimit { steps: u64, elapsed: Duration },

    #[error("unit ideal: {0}")]
    UnitIdeal(String),

    #[error("variable {0} is outside the ambient ring")]
    ForeignVariable(String),

    #[error("generic fibre is not affine: {0}")]
    NotAffineFiber(String),

    #[error("denominator {0} vanishes on the generic point")]
    DegenerateDenominator(String),

    #[error("condition {0} violated")]
    Violation(Condition),

    #[error("primality evidence: {0}")]
    Primality(String),

    #[error("system is not in solved form: {0}")]
    NotSolvedForm(String),

    #[error("no rational point available: {0}")]
    NoPoint(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// The good-pair condition this error reports as violated, if any.
    pub fn condition(&self) -> Option<Condition> {
        match self {
            Error::Violation(c) => Some(*c),
            Error::NotAffineFiber(_) => Some(Condition::AffineFiber),
            _ => None,
        }
    }

    /// Mathematical "no" answers, as opposed to malformed input or exhausted budgets.
    pub fn is_negative_answer(&self) -> bool {
        matches!(
            self,
            Error::Violation(_)
                | Error::NotAffineFiber(_)
                | Error::Primality(_)
                | Error::DegenerateDenominator(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
