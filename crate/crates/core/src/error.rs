use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A scalar parameter is outside the domain the model is defined on
    /// (non-positive energy, mass, wavenumber, non-finite strength, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Site positions are not strictly increasing, or two sites are closer
    /// than [`crate::model::MIN_SEPARATION`].
    #[error("ordering error: {0}")]
    Ordering(String),

    #[error("length mismatch: {0}")]
    Length(String),

    /// Pivot fell below the relative threshold during elimination.
    #[error("singular system: pivot {pivot:.3e} at column {column}")]
    Singular { column: usize, pivot: f64 },

    /// `m22` of a transfer matrix vanished; the array would have a pole at
    /// this parameter, which cannot happen for real strengths.
    #[error("degenerate transfer matrix: |m22| = {0:.3e}")]
    DegenerateMatrix(f64),

    /// `tan(d̃) = 0`: no finite strength gives total transmission.
    #[error("no finite resonant strength at separation {0}")]
    Pole(f64),

    #[error("invalid sweep: {0}")]
    Sweep(String),
}
