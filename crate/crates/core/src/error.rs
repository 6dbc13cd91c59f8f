use thiserror::Error;

/// Errors raised by the geometry, series and classification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A truncated series exhausted its term budget before meeting the tolerance.
    #[error("series did not converge within {max_terms} terms")]
    NonConvergence { max_terms: usize },

    /// `LN - M^2` vanishes, so the second-form Laplacian is undefined.
    #[error("parabolic point at u = {u} (LN - M^2 = {w:e})")]
    ParabolicPoint { u: f64, w: f64 },

    /// The profile has a vanishing first derivative where one is required.
    #[error("non-admissible profile at u = {u}: f'(u) = 0")]
    NotAdmissible { u: f64 },

    /// Malformed textual input (profile specs, expressions, ranges).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
