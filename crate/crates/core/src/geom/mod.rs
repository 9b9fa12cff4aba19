//! Planar primitives: points, rigid motions, convex polygons and boundary tracing.
//!
//! Everything here is generic over the scalar type so the same predicates can
//! be exercised in single precision; the search code uses `f64` throughout.

mod boundary;
mod isometry;
mod point;
mod polygon;

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive};
use thiserror::Error;

pub use boundary::{trace_boundary, Boundary, BoundaryVertex};
pub use isometry::Isometry;
pub use point::Point2;
pub use polygon::{apply_isometry, overlap_area, separated, ConvexPolygon};

/// Floating-point scalar usable by the geometry layer.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal; never fails for the supported types.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not strictly convex at vertex {0}")]
    NotStrictlyConvex(usize),
    #[error("polygon is clockwise")]
    Clockwise,
    #[error("tile union encloses an uncovered region")]
    HoleDetected,
    #[error("tiles do not form one connected component")]
    NotConnected,
    #[error("no tiles given")]
    Empty,
}

/// Reduces an angle to `[0, 2π)`.
pub fn normalize_angle<T: Scalar>(theta: T) -> T {
    let tau = T::TAU();
    let r = theta % tau;
    let r = if r < T::zero() { r + tau } else { r };
    // `r + tau` can round up to exactly tau for tiny negative inputs
    if r >= tau {
        T::zero()
    } else {
        r
    }
}
