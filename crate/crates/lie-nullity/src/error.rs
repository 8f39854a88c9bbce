use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("metric is not positive definite (min eigenvalue {min_eig:e})")]
    SingularMetric { min_eig: f64 },

    #[error("degenerate plane: normalized Gram determinant {denom:e} below tolerance")]
    DegeneratePlane { denom: f64 },

    #[error("J0(t) is singular at t = {t}")]
    SingularJacobi { t: f64 },

    #[error("the flow hits a singularity at t = {t}; trace limits are undefined")]
    SingularFlow { t: f64 },

    #[error("eigenvalue {re}{im:+}i sits on the review boundary near {target}: real part within tolerance but imaginary part is not")]
    AmbiguousEigenvalue { re: f64, im: f64, target: f64 },

    #[error("flat group: the symmetric part of A vanishes, so the 0-nullity is everything")]
    FlatGroup,

    #[error("nilpotent matrix rejected: {0}")]
    Nilpotent(String),

    #[error("construction failed at stage `{stage}`: {detail}")]
    ConstructionStage { stage: &'static str, detail: String },

    #[error("did not converge: {0}")]
    NonConvergence(String),
}
