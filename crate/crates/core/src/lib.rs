pub mod catalog;
pub mod combos;
pub mod corona;
pub mod geom;
pub mod linear;
pub mod render;
pub mod solver;
pub mod spots;
pub mod verify;

/// Double-precision geometry used throughout the search code.
pub type Point = geom::Point2<f64>;
pub type Polygon = geom::ConvexPolygon<f64>;
pub type Pose = geom::Isometry<f64>;

/// Single-precision variants, handy for rendering and quick experiments.
pub type PointF32 = geom::Point2<f32>;
pub type PolygonF32 = geom::ConvexPolygon<f32>;
