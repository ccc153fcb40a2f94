use thiserror::Error;

/// Errors produced while building systems or evaluating entanglement measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("site count {n} is invalid: {reason}")]
    BadSize { n: usize, reason: &'static str },

    #[error("circulant first row is not reflection symmetric: row[{index}] = {left} but row[{mirror}] = {right}")]
    AsymmetricRow {
        index: usize,
        mirror: usize,
        left: f64,
        right: f64,
    },

    #[error("potential matrix is not symmetric at ({row}, {col})")]
    AsymmetricMatrix { row: usize, col: usize },

    #[error("nearest-neighbour coupling c = {c} outside [0, 1/2)")]
    CouplingOutOfRange { c: f64 },

    #[error("potential has eigenvalue {eigenvalue} below zero")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("zero-temperature state of a gapless potential is undefined")]
    GaplessAtZeroT,

    #[error("potential has a zero mode; the position block V^-1/2 W(T) diverges")]
    GaplessPotential,

    #[error("temperature {t} must be finite and non-negative")]
    BadTemperature { t: f64 },

    #[error("invalid partition parameters: {0}")]
    BadPartitionParams(String),

    #[error("operation requires {expected}")]
    WrongKind { expected: &'static str },

    #[error("trapezoidal quadrature did not converge up to {max_points} points")]
    QuadratureNoConvergence { max_points: usize },

    #[error("sufficient condition never satisfied below T_max = {t_max}")]
    NoCrossing { t_max: f64 },

    #[error("spin chain of {n} sites exceeds the exact-diagonalization limit of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("invalid density matrix: {0}")]
    BadDensityMatrix(String),

    #[error("state is still entangled at the top of the bracket T_max = {t_max}")]
    EntangledAtMax { t_max: f64 },

    #[error("no temperature window with PPT half-half cuts and NPPT even-odd cut")]
    NoWindow,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
