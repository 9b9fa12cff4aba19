use serde::{Deserialize, Serialize};

use super::{GeomError, Isometry, Point2, Scalar};

/// A strictly convex polygon.
///
/// Polygons built with [`ConvexPolygon::new`] are counterclockwise. Images
/// under a reflecting isometry keep their vertex order (so vertex `i` of the
/// image is still the image of vertex `i`) and are therefore clockwise; use
/// [`ConvexPolygon::to_ccw`] when a counterclockwise copy is needed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Point2<T>>,
}

impl<T: Scalar> ConvexPolygon<T> {
    pub fn new(vertices: Vec<Point2<T>>) -> Result<Self, GeomError> {
        let poly = Self { vertices };
        poly.check_convex()?;
        if poly.signed_area() <= T::zero() {
            return Err(GeomError::Clockwise);
        }
        Ok(poly)
    }

    fn check_convex(&self) -> Result<(), GeomError> {
        let n = self.vertices.len();
        if n < 3 {
            return Err(GeomError::TooFewVertices(n));
        }
        if self.vertices.iter().any(|p| !p.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        let scale = self.scale();
        let eps = T::lit(1e-12) * scale * scale;
        let sign = self.signed_area().signum();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let c = self.vertices[(i + 2) % n];
            if (b - a).cross(c - b) * sign <= eps {
                return Err(GeomError::NotStrictlyConvex((i + 1) % n));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn signed_area(&self) -> T {
        signed_area(&self.vertices)
    }

    pub fn area(&self) -> T {
        self.signed_area().abs()
    }

    pub fn is_ccw(&self) -> bool {
        self.signed_area() > T::zero()
    }

    pub fn to_ccw(&self) -> Self {
        let mut vertices = self.vertices.clone();
        if !self.is_ccw() {
            vertices.reverse();
        }
        Self { vertices }
    }

    /// Length of the edge from vertex `i` to vertex `i + 1`.
    pub fn edge_length(&self, i: usize) -> T {
        let n = self.len();
        self.vertices[i % n].distance(self.vertices[(i + 1) % n])
    }

    /// Longest edge; the natural length unit for tolerances.
    pub fn scale(&self) -> T {
        (0..self.len())
            .map(|i| self.edge_length(i))
            .fold(T::zero(), T::max)
    }

    /// Interior angle (radians) at vertex `i`, independent of orientation.
    pub fn interior_angle(&self, i: usize) -> T {
        let n = self.len();
        let prev = self.vertices[(i + n - 1) % n] - self.vertices[i];
        let next = self.vertices[(i + 1) % n] - self.vertices[i];
        prev.cross(next).abs().atan2(prev.dot(next))
    }

    pub fn bbox(&self) -> (Point2<T>, Point2<T>) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for p in &self.vertices[1..] {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    pub fn centroid(&self) -> Point2<T> {
        let n = T::from_usize(self.len()).unwrap();
        let sum = self
            .vertices
            .iter()
            .fold(Point2::origin(), |acc, &p| acc + p);
        sum * (T::one() / n)
    }

    /// Strict interior containment with a margin.
    pub fn contains(&self, p: Point2<T>, margin: T) -> bool {
        let ccw = self.to_ccw();
        let n = ccw.len();
        (0..n).all(|i| {
            let a = ccw.vertices[i];
            let b = ccw.vertices[(i + 1) % n];
            let e = b - a;
            e.cross(p - a) / e.norm() > margin
        })
    }
}

pub(crate) fn signed_area<T: Scalar>(pts: &[Point2<T>]) -> T {
    let n = pts.len();
    let mut acc = T::zero();
    for i in 0..n {
        acc = acc + pts[i].cross(pts[(i + 1) % n]);
    }
    acc * T::lit(0.5)
}

/// Image of `p` under `g`. Orientation flips exactly when `g.reflected`.
pub fn apply_isometry<T: Scalar>(g: &Isometry<T>, p: &ConvexPolygon<T>) -> ConvexPolygon<T> {
    ConvexPolygon {
        vertices: p.vertices.iter().map(|&v| g.apply(v)).collect(),
    }
}

fn project<T: Scalar>(pts: &[Point2<T>], axis: Point2<T>) -> (T, T) {
    pts.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), &p| {
        let d = p.dot(axis);
        (lo.min(d), hi.max(d))
    })
}

/// Separating-axis test over the edge normals of both polygons.
///
/// Returns true when some axis separates the projections with an overlap no
/// larger than `slack` (in length units), i.e. the polygons at most touch.
pub fn separated<T: Scalar>(p: &ConvexPolygon<T>, q: &ConvexPolygon<T>, slack: T) -> bool {
    for poly in [p, q] {
        let n = poly.len();
        for i in 0..n {
            let e = poly.vertices[(i + 1) % n] - poly.vertices[i];
            let len = e.norm();
            if len <= T::zero() {
                continue;
            }
            let axis = Point2::new(-e.y / len, e.x / len);
            let (plo, phi) = project(&p.vertices, axis);
            let (qlo, qhi) = project(&q.vertices, axis);
            if phi <= qlo + slack || qhi <= plo + slack {
                return true;
            }
        }
    }
    false
}

/// Sutherland–Hodgman clip of `subject` against the convex counterclockwise `clip`.
fn clip_convex<T: Scalar>(subject: &[Point2<T>], clip: &[Point2<T>]) -> Vec<Point2<T>> {
    let mut out = subject.to_vec();
    let n = clip.len();
    for i in 0..n {
        if out.is_empty() {
            break;
        }
        let a = clip[i];
        let b = clip[(i + 1) % n];
        let edge = b - a;
        let input = std::mem::take(&mut out);
        let m = input.len();
        for j in 0..m {
            let cur = input[j];
            let prev = input[(j + m - 1) % m];
            let cur_in = edge.cross(cur - a) >= T::zero();
            let prev_in = edge.cross(prev - a) >= T::zero();
            if cur_in != prev_in {
                let d = cur - prev;
                let denom = edge.cross(d);
                if denom != T::zero() {
                    let t = edge.cross(a - prev) / denom;
                    out.push(prev + d * t);
                }
            }
            if cur_in {
                out.push(cur);
            }
        }
    }
    out
}

/// Area of `p ∩ q`. Exactly zero when a separating axis exists with slack 1e-9.
pub fn overlap_area<T: Scalar>(p: &ConvexPolygon<T>, q: &ConvexPolygon<T>) -> T {
    let scale = p.scale().max(q.scale());
    if separated(p, q, T::lit(1e-9) * scale) {
        return T::zero();
    }
    let p = p.to_ccw();
    let q = q.to_ccw();
    let clipped = clip_convex(&p.vertices, &q.vertices);
    if clipped.len() < 3 {
        return T::zero();
    }
    signed_area(&clipped).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn square(x: f64, y: f64) -> ConvexPolygon<f64> {
        ConvexPolygon::new(vec![
            Point2::new(x, y),
            Point2::new(x + 1.0, y),
            Point2::new(x + 1.0, y + 1.0),
            Point2::new(x, y + 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_bad_polygons() {
        let cw = vec![
            Point2::new(0.0, 0.0),
            Point2::new(0.0, 1.0),
            Point2::new(1.0, 0.0),
        ];
        assert!(matches!(ConvexPolygon::new(cw), Err(GeomError::Clockwise)));
        let flat = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 1.0),
        ];
        assert!(matches!(
            ConvexPolygon::new(flat),
            Err(GeomError::NotStrictlyConvex(1))
        ));
        let nan = vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, f64::NAN),
            Point2::new(1.0, 1.0),
        ];
        assert!(matches!(ConvexPolygon::new(nan), Err(GeomError::NonFinite)));
    }

    #[test]
    fn identity_keeps_polygon() {
        let p = square(0.3, -0.2);
        assert_eq!(apply_isometry(&Isometry::identity(), &p), p);
    }

    #[test]
    fn half_turn_of_centered_square() {
        let p = ConvexPolygon::new(vec![
            Point2::new(-0.5, -0.5),
            Point2::new(0.5, -0.5),
            Point2::new(0.5, 0.5),
            Point2::new(-0.5, 0.5),
        ])
        .unwrap();
        let img = apply_isometry(&Isometry::rotation(PI), &p);
        // same point set, list rotated by two
        for i in 0..4 {
            let a = img.vertices()[i];
            let b = p.vertices()[(i + 2) % 4];
            assert!(a.distance(b) < 1e-12);
        }
    }

    #[test]
    fn reflection_flips_orientation() {
        let tri: ConvexPolygon<f64> = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(3.0, 0.0),
            Point2::new(0.5, 2.0),
        ])
        .unwrap();
        let g = Isometry::new(0.7, Point2::new(1.0, 2.0), true);
        let img = apply_isometry(&g, &tri);
        assert!(tri.signed_area() > 0.0);
        assert!(img.signed_area() < 0.0);
        assert!((img.area() - tri.area()).abs() < 1e-12);
        for i in 0..3 {
            assert!((img.edge_length(i) - tri.edge_length(i)).abs() < 1e-12);
        }
    }

    #[test]
    fn overlap_examples() {
        assert_eq!(overlap_area(&square(0.0, 0.0), &square(2.0, 0.0)), 0.0);
        // touching along an edge counts as separated
        assert_eq!(overlap_area(&square(0.0, 0.0), &square(1.0, 0.0)), 0.0);
        assert!((overlap_area(&square(0.0, 0.0), &square(0.0, 0.0)) - 1.0).abs() < 1e-12);
        assert!((overlap_area(&square(0.0, 0.0), &square(0.5, 0.0)) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn works_in_single_precision() {
        let p: ConvexPolygon<f32> = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        let q = apply_isometry(&Isometry::translation(Point2::new(0.25, 0.25)), &p);
        assert!((overlap_area(&p, &q) - 0.5625).abs() < 1e-5);
    }
}
