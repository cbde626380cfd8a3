use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("potential singular at evaluation point: {0}")]
    SingularPoint(String),

    #[error("special-function domain violation: {0}")]
    SpecFunDomain(String),

    #[error("no admissible branch under the given policy")]
    NoAdmissibleBranch,

    #[error("no spectral root in [{lo}, {hi}] for n = {n}")]
    NoSpectralRoot { lo: f64, hi: f64, n: u32 },

    #[error("weight function not integrable (endpoint exponent {0} <= -1)")]
    NonIntegrableWeight(f64),

    #[error("no bound state: {0}")]
    NoBoundState(String),

    #[error("negative radicand {0} in closed-form energy")]
    NegativeRadicand(f64),

    #[error("wavefunction not normalizable: {0}")]
    NonNormalizable(String),

    #[error("quadrature did not converge (estimated error {0:.3e})")]
    QuadratureDivergence(f64),

    #[error("eigenvalue count {count} too large for {n} interior points")]
    EigenCountTooLarge { count: usize, n: usize },

    #[error("eigenstate tail {tail:.3e} not decayed at r_max = {r_max}; enlarge the domain")]
    TailNotDecayed { tail: f64, r_max: f64 },

    #[error("line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("state (n0 = {n0}, nr = {nr}) not available: {msg}")]
    StateNotFound { n0: u32, nr: u32, msg: String },

    #[error("mismatched separation constants: angular M^2 = {angular}, radial M^2 = {radial}")]
    MismatchedMsq { angular: f64, radial: f64 },

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
