//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    ZeroDenominator,

    #[error("pole at n = {at}: denominator {denominator} vanishes")]
    Pole { at: i64, denominator: String },

    #[error("degree mismatch: expected S_{expected}, got S_{got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("not invertible: character coefficient vanishes at lambda = ({lambda})")]
    NotInvertible { lambda: String },

    #[error("degree {k} exceeds dense bound {bound}; use the class-function route")]
    DenseBound { k: usize, bound: usize },

    #[error("not a class function: conjugate permutations [{a}] and [{b}] take different values")]
    NotClassFunction { a: String, b: String },

    #[error("{0}")]
    Domain(String),

    #[error("term budget exceeded ({limit} terms); try the Weingarten route")]
    TermBudget { limit: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid query: {0}")]
    Query(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
