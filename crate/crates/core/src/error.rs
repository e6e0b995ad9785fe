use thiserror::Error;

/// Errors raised by the geometric and combinatorial operations of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("degenerate polygon: {0}")]
    Degenerate(String),

    #[error("body is not centrally symmetric about the origin")]
    NotSymmetric,

    #[error("caps defined only for smooth bodies")]
    NotSmooth,

    #[error("translates {i} and {j} overlap (gauge distance {distance})")]
    Overlap { i: usize, j: usize, distance: f64 },

    #[error("point set is not separable: {0}")]
    NotSeparable(String),

    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: &'static str,
    },

    #[error("bulge {bulge} outside the admissible interval [{lo}, {hi}]")]
    BulgeOutOfWindow { bulge: f64, lo: f64, hi: f64 },

    #[error("infeasible approximation: {0}; try a smaller delta")]
    Infeasible(String),

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
