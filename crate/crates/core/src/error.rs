use thiserror::Error;

/// Errors raised by the geometry toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid wave front: {0}")]
    InvalidFront(String),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },
    #[error("curve is not parametrized by arc length")]
    NotArclength,
    #[error("perimeter {perimeter} is not normalized to 2π")]
    PerimeterNotNormalized { perimeter: f64 },
    #[error("curve is not convex (curvature ranges over [{min_curvature}, {max_curvature}])")]
    NotConvex { min_curvature: f64, max_curvature: f64 },
    #[error("apex altitude {h} outside the convex range ({lo}, {hi})")]
    AltitudeOutOfRange { h: f64, lo: f64, hi: f64 },
    #[error("quadrilateral {index} is not concyclic (residual {residual:e})")]
    NotConcyclic { index: usize, residual: f64 },
    #[error("malformed input at `{path}`: {message}")]
    Parse { path: String, message: String },
    #[error("no first-order deformations for (n, k) = ({n}, {k})")]
    EmptyKernel { n: usize, k: usize },
}

impl Error {
    pub(crate) fn arg(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument { name, reason: reason.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
