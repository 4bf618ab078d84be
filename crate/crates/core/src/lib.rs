//! Intrinsic geometry of polygonal Jordan domains.
//!
//! Shortest paths in simple polygons, geodesic triangles split into Jordan
//! triangles with tails, and empirical certification of CAT(0) thinness,
//! the 4D perimeter bound on Jordan triangles, sqrt(3)D/4 Gromov
//! hyperbolicity, shared geodesic tails and cone-topology probes.

pub mod asymptotics;
pub mod cat0;
pub mod certify;
pub mod domain;
pub mod error;
pub mod geodesic;
pub mod geom;
pub mod oracle;
pub mod polygon;
pub mod report;
pub mod sampling;
pub mod svg;

pub use domain::Domain;
pub use error::{GeoError, Result};
pub use geodesic::GeodesicPath;
pub use geom::{Point, Segment};
pub use polygon::{PolygonKind, SimplePolygon};
