use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible ambient spaces: (n={n1}, s={s1}) vs (n={n2}, s={s2})")]
    IncompatibleAmbient {
        n1: usize,
        s1: usize,
        n2: usize,
        s2: usize,
    },

    #[error("invalid ambient: {0}")]
    InvalidAmbient(String),

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("Weyl orbit for (n={n}, s={s}) exceeded the cap of {cap} classes")]
    OrbitUnbounded { n: usize, s: usize, cap: usize },

    #[error("not a Weyl divisor: {0}")]
    NotAWeylDivisor(String),

    #[error("curve is not in the Weyl curve catalog: {0}")]
    CurveNotInCatalog(String),

    #[error("no catalog available for (n={n}, s={s})")]
    CatalogUnavailable { n: usize, s: usize },

    #[error("wdim is undefined for the non-effective class {0}")]
    WdimUndefined(String),

    #[error("no nonnegative integer decomposition: {0}")]
    NoDecomposition(String),

    #[error("invalid interpolation problem: {0}")]
    InvalidProblem(String),

    #[error("parse error: {0}")]
    Parse(String),
}
