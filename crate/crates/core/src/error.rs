use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("operator is not Hermitian (max |H - H†| = {defect:e})")]
    NonHermitianInput { defect: f64 },

    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("coupling J must be nonzero")]
    DegenerateCoupling,

    #[error("finite-difference step {h:e} outside [1e-6, 1e-2]")]
    StepOutOfRange { h: f64 },

    #[error("finite-difference metric moved by {shift:e} when halving the step (limit {limit:e})")]
    RichardsonMismatch { shift: f64, limit: f64 },

    #[error("generators do not commute (max |[H1, H2]| = {defect:e})")]
    NonCommutingGenerators { defect: f64 },

    #[error("angle {name} = {value} outside {range}")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("invalid anisotropy: {0}")]
    InvalidAnisotropy(String),

    #[error("non-finite parameter {0}")]
    NonFinite(&'static str),
}
