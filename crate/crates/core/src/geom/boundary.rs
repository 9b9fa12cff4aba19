use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ConvexPolygon, GeomError, Point2, Scalar};

/// One vertex of a traced outer boundary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryVertex<T> {
    pub point: Point2<T>,
    /// Indices of the tiles touching this point (as a corner or along an edge).
    pub tiles: Vec<usize>,
    /// Sum of the incident interior angles, radians (π for a tile whose edge
    /// passes through the point).
    pub covered: T,
    /// True when the boundary runs straight through the point.
    pub flat: bool,
    /// Remaining angle: `π − covered` on a straight run, `2π − covered` otherwise.
    pub gap: T,
}

impl<T: Scalar> BoundaryVertex<T> {
    /// Angle still open on the outside, `2π − covered`, regardless of flatness.
    pub fn open_angle(&self) -> T {
        T::TAU() - self.covered
    }
}

/// Counterclockwise outer boundary of a tile union.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Boundary<T> {
    pub vertices: Vec<BoundaryVertex<T>>,
}

impl<T: Scalar> Boundary<T> {
    /// Boundary vertices where the outline actually turns.
    pub fn corners(&self) -> impl Iterator<Item = &BoundaryVertex<T>> {
        self.vertices.iter().filter(|v| !v.flat)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn signed_area(&self) -> T {
        let pts: Vec<_> = self.vertices.iter().map(|v| v.point).collect();
        super::polygon::signed_area(&pts)
    }
}

struct Registry<T> {
    points: Vec<Point2<T>>,
    tol: T,
}

impl<T: Scalar> Registry<T> {
    fn id(&mut self, p: Point2<T>) -> usize {
        if let Some(i) = self.points.iter().position(|q| q.distance(p) <= self.tol) {
            return i;
        }
        self.points.push(p);
        self.points.len() - 1
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[i] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra.max(rb)] = ra.min(rb);
    }
}

/// Traces the outer boundary of a set of non-overlapping convex tiles.
///
/// Tiles may be given in either orientation. Vertices of one tile lying in the
/// interior of another tile's edge split that edge, so T-junctions show up as
/// boundary vertices (flat when the outline is straight there). The walk starts
/// at the lexicographically smallest boundary point.
pub fn trace_boundary<T: Scalar>(tiles: &[ConvexPolygon<T>]) -> Result<Boundary<T>, GeomError> {
    if tiles.is_empty() {
        return Err(GeomError::Empty);
    }
    let tiles: Vec<ConvexPolygon<T>> = tiles.iter().map(|t| t.to_ccw()).collect();
    let scale = tiles.iter().map(|t| t.scale()).fold(T::zero(), T::max);
    let tol = T::lit(1e-7) * scale;
    let angle_tol = T::lit(1e-7);

    let mut reg = Registry {
        points: Vec::new(),
        tol,
    };
    let corner_ids: Vec<Vec<usize>> = tiles
        .iter()
        .map(|t| t.vertices().iter().map(|&p| reg.id(p)).collect())
        .collect();

    // incident angle sums and tiles per registered point
    let npts = reg.points.len();
    let mut covered = vec![T::zero(); npts];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); npts];
    // directed atomic segments, with multiplicity
    let mut segs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut uf = UnionFind((0..tiles.len()).collect());
    let mut owner: Vec<Option<usize>> = vec![None; npts];

    for (ti, tile) in tiles.iter().enumerate() {
        let n = tile.len();
        for k in 0..n {
            let id = corner_ids[ti][k];
            covered[id] = covered[id] + tile.interior_angle(k);
            incident[id].push(ti);
            let a = tile.vertices()[k];
            let b = tile.vertices()[(k + 1) % n];
            let e = b - a;
            let len = e.norm();
            let mut on_edge: Vec<(T, usize)> = vec![(T::zero(), id)];
            for (pid, &p) in reg.points.iter().enumerate() {
                if pid == id || pid == corner_ids[ti][(k + 1) % n] {
                    continue;
                }
                let t = (p - a).dot(e) / (len * len);
                let dist = e.cross(p - a).abs() / len;
                if dist <= tol && t * len > tol && (T::one() - t) * len > tol {
                    on_edge.push((t, pid));
                    covered[pid] = covered[pid] + T::PI();
                    incident[pid].push(ti);
                }
            }
            on_edge.push((T::one(), corner_ids[ti][(k + 1) % n]));
            on_edge.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
            for w in on_edge.windows(2) {
                *segs.entry((w[0].1, w[1].1)).or_insert(0) += 1;
            }
        }
        for &id in &corner_ids[ti] {
            match owner[id] {
                Some(o) => uf.union(o, ti),
                None => owner[id] = Some(ti),
            }
        }
    }
    // edge-interior contacts also connect tiles
    for list in &incident {
        for w in list.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let root = uf.find(0);
    if (1..tiles.len()).any(|i| uf.find(i) != root) {
        return Err(GeomError::NotConnected);
    }

    // keep segments without an opposite partner
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (&(u, v), &mult) in &segs {
        let back = segs.get(&(v, u)).copied().unwrap_or(0);
        for _ in back..mult {
            out.entry(u).or_default().push(v);
        }
    }
    let total: usize = out.values().map(|v| v.len()).sum();

    let mut used: BTreeMap<usize, Vec<bool>> =
        out.iter().map(|(&k, v)| (k, vec![false; v.len()])).collect();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    loop {
        let Some((start, slot)) = used
            .iter()
            .find_map(|(&k, u)| u.iter().position(|x| !x).map(|i| (k, i)))
        else {
            break;
        };
        used.get_mut(&start).unwrap()[slot] = true;
        let mut cycle = vec![start];
        let (mut prev, mut cur) = (start, out[&start][slot]);
        loop {
            let base = (reg.points[prev] - reg.points[cur]).angle();
            let targets = out.get(&cur).ok_or(GeomError::HoleDetected)?;
            let marks = &used[&cur];
            // the closing edge competes with the unused ones at the start vertex
            let best = (0..targets.len())
                .filter(|&i| !marks[i] || (cur == start && i == slot))
                .min_by(|&i, &j| {
                    let turn = |k: usize| {
                        super::normalize_angle(
                            (reg.points[targets[k]] - reg.points[cur]).angle() - base,
                        )
                    };
                    turn(i).partial_cmp(&turn(j)).unwrap()
                })
                .ok_or(GeomError::HoleDetected)?;
            if cur == start && best == slot {
                break;
            }
            used.get_mut(&cur).unwrap()[best] = true;
            cycle.push(cur);
            prev = cur;
            cur = targets[best];
        }
        cycles.push(cycle);
    }
    if cycles.len() != 1 || total == 0 {
        return Err(GeomError::HoleDetected);
    }
    let mut cycle = cycles.pop().unwrap();

    let start = (0..cycle.len())
        .min_by(|&i, &j| {
            let (p, q) = (reg.points[cycle[i]], reg.points[cycle[j]]);
            (p.x, p.y).partial_cmp(&(q.x, q.y)).unwrap()
        })
        .unwrap();
    cycle.rotate_left(start);

    let n = cycle.len();
    let vertices: Vec<BoundaryVertex<T>> = (0..n)
        .map(|i| {
            let id = cycle[i];
            let p = reg.points[id];
            let prev = reg.points[cycle[(i + n - 1) % n]];
            let next = reg.points[cycle[(i + 1) % n]];
            let turn = (p - prev).cross(next - p).atan2((p - prev).dot(next - p));
            let flat = turn.abs() <= angle_tol;
            let mut tiles_here = incident[id].clone();
            tiles_here.sort_unstable();
            tiles_here.dedup();
            let gap = if flat { T::PI() } else { T::TAU() } - covered[id];
            BoundaryVertex {
                point: p,
                tiles: tiles_here,
                covered: covered[id],
                flat,
                gap,
            }
        })
        .collect();
    let boundary = Boundary { vertices };
    if boundary.signed_area() <= T::zero() {
        return Err(GeomError::HoleDetected);
    }
    Ok(boundary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{apply_isometry, Isometry};
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

    fn pentagon() -> ConvexPolygon<f64> {
        ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.5, 1.0),
            Point2::new(1.0, 2.0),
            Point2::new(-0.5, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn single_tile() {
        let p = pentagon();
        let b = trace_boundary(std::slice::from_ref(&p)).unwrap();
        assert_eq!(b.len(), 5);
        for (i, v) in b.vertices.iter().enumerate() {
            assert_eq!(v.tiles, vec![0]);
            assert!(!v.flat);
            // boundary starts at the smallest point, which is (-0.5, 1) = vertex 4
            let k = (i + 4) % 5;
            assert!((v.gap - (2.0 * PI - p.interior_angle(k))).abs() < 1e-12);
        }
    }

    #[test]
    fn two_squares() {
        let b = trace_boundary(&[square(0.0, 0.0), square(1.0, 0.0)]).unwrap();
        assert_eq!(b.len(), 6);
        assert_eq!(b.corners().count(), 4);
        for v in b.vertices.iter().filter(|v| v.flat) {
            assert!(v.gap.abs() < 1e-12);
            assert_eq!(v.tiles, vec![0, 1]);
            assert!((v.point.x - 1.0).abs() < 1e-12);
        }
        assert!((b.signed_area() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn t_junction_is_split() {
        // a wide tile under two unit squares
        let wide = ConvexPolygon::new(vec![
            Point2::new(0.0, -1.0),
            Point2::new(2.0, -1.0),
            Point2::new(2.0, 0.0),
            Point2::new(0.0, 0.0),
        ])
        .unwrap();
        let b = trace_boundary(&[wide, square(0.0, 0.0), square(1.0, 0.0)]).unwrap();
        // the T-junction at (1, 0) is interior; (0, 0), (2, 0), (1, 1) are flat
        assert_eq!(b.len(), 7);
        assert_eq!(b.corners().count(), 4);
        assert!(b.vertices.iter().all(|v| v.point.distance(Point2::new(1.0, 0.0)) > 1e-9));
    }

    #[test]
    fn reflected_tiles_are_accepted() {
        let g = Isometry::new(0.0, Point2::new(0.0, 2.0), true);
        let img = apply_isometry(&g, &square(0.0, 0.0));
        let b = trace_boundary(&[square(0.0, 0.0), img]).unwrap();
        assert_eq!(b.corners().count(), 4);
    }

    #[test]
    fn disconnected_and_holes() {
        assert_eq!(
            trace_boundary(&[square(0.0, 0.0), square(3.0, 0.0)]),
            Err(GeomError::NotConnected)
        );
        // ring of 8 squares around an empty centre
        let mut ring = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                if (x, y) != (1, 1) {
                    ring.push(square(x as f64, y as f64));
                }
            }
        }
        assert_eq!(trace_boundary(&ring), Err(GeomError::HoleDetected));
        ring.push(square(1.0, 1.0));
        let b = trace_boundary(&ring).unwrap();
        assert_eq!(b.corners().count(), 4);
        assert!(b.vertices.iter().all(|v| v.gap >= -1e-12 && v.gap < 2.0 * PI));
    }

    #[test]
    fn corner_pinch() {
        let b = trace_boundary(&[square(0.0, 0.0), square(1.0, 1.0)]).unwrap();
        assert_eq!(b.len(), 8);
        assert!((b.signed_area() - 2.0).abs() < 1e-12);
    }
}
