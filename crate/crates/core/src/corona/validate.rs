//! Independent checks on a finished patch.

use serde::{Deserialize, Serialize};

use crate::geom::{overlap_area, trace_boundary};
use crate::{Point, Polygon};

use super::board::{OVERLAP_TOL, POINT_TOL};
use super::Patch;

/// Angle sums at interior points, degrees.
const SUM_TOL_DEG: f64 = 1e-6;
/// Open angle allowed at a surrounded point, degrees.
const GAP_TOL_DEG: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapViolation {
    pub tiles: (usize, usize),
    pub area: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverageViolation {
    /// Number of layers inside the region that should be surrounded (0 = kernel).
    pub region_layers: usize,
    pub point: [f64; 2],
    /// Open angle at a boundary point, or `None` for an uncovered edge
    /// (then `point` is the edge midpoint).
    pub gap_deg: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexViolation {
    pub point: [f64; 2],
    pub corner_sum_deg: f64,
    pub edges_through: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PatchValidation {
    pub overlaps: Vec<OverlapViolation>,
    pub coverage: Vec<CoverageViolation>,
    pub vertices: Vec<VertexViolation>,
    /// Layer tiles not touching the region they belong around.
    pub detached: Vec<usize>,
    /// Problems with the union itself (holes, disconnection, empty patch).
    pub structure: Vec<String>,
}

impl PatchValidation {
    pub fn ok(&self) -> bool {
        self.overlaps.is_empty()
            && self.coverage.is_empty()
            && self.vertices.is_empty()
            && self.detached.is_empty()
            && self.structure.is_empty()
    }
}

fn seg_distance(p: Point, a: Point, b: Point) -> f64 {
    let d = b - a;
    let t = ((p - a).dot(d) / d.norm_sq()).clamp(0.0, 1.0);
    p.distance(a + d * t)
}

fn inside_edge(p: Point, a: Point, b: Point, tol: f64) -> bool {
    let d = b - a;
    let len = d.norm();
    let t = (p - a).dot(d) / (len * len);
    d.cross(p - a).abs() / len <= tol && t * len > tol && (1.0 - t) * len > tol
}

struct PointInfo {
    p: Point,
    corner_sum: f64,
    edges_through: usize,
}

/// Corner sums and edge contacts at every tile corner of the patch.
fn point_table(polys: &[Polygon], angles: &[Vec<f64>], tol: f64) -> Vec<PointInfo> {
    let mut pts: Vec<PointInfo> = Vec::new();
    for (poly, ang) in polys.iter().zip(angles) {
        for (k, &v) in poly.vertices().iter().enumerate() {
            match pts.iter_mut().find(|q| q.p.distance(v) <= tol) {
                Some(q) => q.corner_sum += ang[k],
                None => pts.push(PointInfo {
                    p: v,
                    corner_sum: ang[k],
                    edges_through: 0,
                }),
            }
        }
    }
    for q in pts.iter_mut() {
        for poly in polys {
            let n = poly.len();
            for e in 0..n {
                if inside_edge(q.p, poly.vertices()[e], poly.vertices()[(e + 1) % n], tol) {
                    q.edges_through += 1;
                }
            }
        }
    }
    pts
}

/// Checks overlaps, that every inner region is surrounded by the next layer,
/// angle sums at interior points, and that layer tiles touch their region.
pub fn validate_patch(patch: &Patch) -> PatchValidation {
    let mut out = PatchValidation::default();
    let polys = patch.polygons();
    if polys.is_empty() {
        out.structure.push("empty patch".into());
        return out;
    }
    let scale = patch.pentagon.longest_edge();
    let tol = POINT_TOL * scale;
    let angles: Vec<Vec<f64>> = polys
        .iter()
        .map(|p| (0..p.len()).map(|i| p.interior_angle(i).to_degrees()).collect())
        .collect();

    let limit = OVERLAP_TOL * scale * scale;
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let a = overlap_area(&polys[i], &polys[j]);
            if a > limit {
                out.overlaps.push(OverlapViolation { tiles: (i, j), area: a });
            }
        }
    }

    let table = point_table(&polys, &angles, tol);
    let covered_at = |p: Point| -> f64 {
        table
            .iter()
            .find(|q| q.p.distance(p) <= tol)
            .map(|q| q.corner_sum + 180.0 * q.edges_through as f64)
            .unwrap_or(0.0)
    };

    // region k = kernel plus the first k layers; each must be surrounded
    let mut sizes = vec![patch.kernel.len()];
    for l in &patch.layers {
        sizes.push(sizes.last().unwrap() + l.len());
    }
    for k in 0..patch.layers.len() {
        let region = &polys[..sizes[k]];
        let boundary = match trace_boundary(region) {
            Ok(b) => b,
            Err(e) => {
                out.structure.push(format!("region of {k} layer(s): {e}"));
                continue;
            }
        };
        let n = boundary.len();
        for i in 0..n {
            let v = boundary.vertices[i].point;
            let gap = 360.0 - covered_at(v);
            if gap.abs() > GAP_TOL_DEG {
                out.coverage.push(CoverageViolation {
                    region_layers: k,
                    point: [v.x, v.y],
                    gap_deg: Some(gap),
                });
            }
            let w = boundary.vertices[(i + 1) % n].point;
            let d = w - v;
            let normal = Point::new(d.y, -d.x) * (1.0 / d.norm());
            let probe = (v + w) * 0.5 + normal * (1e-5 * scale);
            if !polys[sizes[k]..].iter().any(|t| t.contains(probe, 0.0)) {
                let m = (v + w) * 0.5;
                out.coverage.push(CoverageViolation {
                    region_layers: k,
                    point: [m.x, m.y],
                    gap_deg: None,
                });
            }
        }
        // every tile of layer k+1 touches region k
        for (ti, t) in polys.iter().enumerate().take(sizes[k + 1]).skip(sizes[k]) {
            let touches = region.iter().any(|r| {
                let touch = |x: &Polygon, y: &Polygon| {
                    let n = y.len();
                    x.vertices().iter().any(|&p| {
                        (0..n).any(|e| seg_distance(p, y.vertices()[e], y.vertices()[(e + 1) % n]) <= tol)
                    })
                };
                touch(t, r) || touch(r, t)
            });
            if !touches {
                out.detached.push(ti);
            }
        }
    }

    match trace_boundary(&polys) {
        Ok(b) => {
            let on_boundary = |p: Point| b.vertices.iter().any(|v| v.point.distance(p) <= tol);
            for q in &table {
                if on_boundary(q.p) {
                    continue;
                }
                let ok = (q.edges_through == 0 && (q.corner_sum - 360.0).abs() <= SUM_TOL_DEG)
                    || (q.edges_through == 1 && (q.corner_sum - 180.0).abs() <= SUM_TOL_DEG);
                if !ok {
                    out.vertices.push(VertexViolation {
                        point: [q.p.x, q.p.y],
                        corner_sum_deg: q.corner_sum,
                        edges_through: q.edges_through,
                    });
                }
            }
        }
        Err(e) => out.structure.push(format!("patch: {e}")),
    }
    out
}
