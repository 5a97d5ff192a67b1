use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series diverges: {0}")]
    DivergentSeries(String),
    #[error("argument outside the admissible set: {0}")]
    InadmissibleArgument(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("unsupported function: {0}")]
    UnsupportedFunction(String),
    #[error("q-series would need order {0} (> 10^6) to reach tolerance")]
    SlowConvergence(u64),
    #[error("pole at cusp: {0}")]
    PoleAtCusp(String),
    #[error("inadmissible sample: {0}")]
    InadmissibleSample(String),
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("p = {0} is inert")]
    InertPrime(u64),
    #[error("unsupported discriminant -{0}")]
    UnsupportedDiscriminant(u64),
    #[error("no Eisenstein decomposition for {0}")]
    NoDecomposition(String),
    #[error("root number ambiguous for {0}")]
    RootNumberAmbiguous(String),
    #[error("invalid precision context: {0}")]
    InvalidContext(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("unknown identifier: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;
