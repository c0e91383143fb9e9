use thiserror::Error;

use crate::exactpoly::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate interpolation node x = {0}")]
    DuplicateNode(Rational),

    #[error("interpolation needs at least one point")]
    NoPoints,

    #[error("polynomial of degree {degree} does not fit ambient degree {ambient}")]
    DegreeTooHigh { degree: usize, ambient: usize },

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("budget of {budget} exceeded ({expanded} units of work requested or expanded)")]
    BudgetExceeded { budget: u64, expanded: u64 },

    #[error("over-sample check failed at n = {n}: interpolant gives {interpolated}, counter gives {counted}")]
    OversampleMismatch {
        n: u64,
        interpolated: Box<Rational>,
        counted: Box<Rational>,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
