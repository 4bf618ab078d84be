use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeoError {
    #[error("polygon is not simple: edge {edge_a} intersects edge {edge_b}")]
    SimplicityViolation { edge_a: usize, edge_b: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point ({x}, {y}) is outside the domain")]
    PointOutsideDomain { x: f64, y: f64 },

    #[error("arclength {s} outside [0, {total}]")]
    ArclengthOutOfRange { s: f64, total: f64 },

    #[error("segment is not a chord of the polygon")]
    InvalidChord,

    #[error("zero-length direction vector")]
    ZeroDirection,

    #[error("triangle core is degenerate")]
    DegenerateTriangle,

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = GeoError> = std::result::Result<T, E>;
