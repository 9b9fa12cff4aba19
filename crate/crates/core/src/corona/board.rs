//! Incremental placement board: tiles, a point registry with the wedges
//! meeting at every point, and an undo journal for backtracking.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};

use crate::catalog::CornerLabel;
use crate::combos::AngleCombos;
use crate::geom::{apply_isometry, overlap_area, trace_boundary, GeomError};
use crate::solver::Pentagon;
use crate::{Point, Polygon, Pose};

use super::PlacementModel;

/// Point coincidence, relative to the longest edge.
pub(crate) const POINT_TOL: f64 = 1e-7;
/// Angular slack when ordering wedges around a point, radians.
pub(crate) const ANGLE_TOL: f64 = 1e-7;
/// Largest tolerated overlap area, relative to the squared longest edge.
pub(crate) const OVERLAP_TOL: f64 = 1e-9;

/// A wedge of directions covered by one tile at a point: either a corner of
/// the tile, or (for a point inside one of its edges) a half plane.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Contact {
    pub tile: usize,
    /// Direction of the clockwise-most ray.
    pub start: f64,
    pub sweep: f64,
    /// Far end of the tile edge along the end ray.
    pub end_far: Point,
    pub corner: Option<CornerLabel>,
}

#[derive(Clone, Debug)]
pub(crate) struct Vertex {
    pub p: Point,
    pub contacts: Vec<Contact>,
    /// Position on the boundary of the region being surrounded: boundary
    /// edge index and parameter along it.
    pub rank: Option<(usize, f64)>,
    /// Direction where the region's own wedge ends (the outside starts).
    pub ref_dir: Option<f64>,
}

#[derive(Clone, Debug)]
pub(crate) struct Tile {
    pub pose: Pose,
    pub corners: [Point; 5],
    /// Counterclockwise copy of the corners for overlap tests.
    pub poly: Polygon,
    pub lo: Point,
    pub hi: Point,
}

/// An uncovered angular interval at a point.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Arc {
    pub width: f64,
    /// Contact whose end ray starts the arc.
    pub prev: usize,
}

struct Undo {
    verts_before: usize,
    pushed: Vec<usize>,
}

pub(crate) struct Board<'a> {
    pub pent: &'a Pentagon,
    pub base: [Point; 5],
    pub angles_deg: [f64; 5],
    pub scale: f64,
    pub tol: f64,
    pub combos: AngleCombos,
    pub mode: PlacementModel,
    pub tiles: Vec<Tile>,
    pub verts: Vec<Vertex>,
    grid: HashMap<(i64, i64), Vec<usize>>,
    cell: f64,
    /// Boundary segments of the region being surrounded.
    pub region: Vec<(Point, Point)>,
    pub region_tiles: usize,
    /// Region boundary vertices (plus points created on its edges), in
    /// boundary order.
    pub must: Vec<((usize, f64), usize)>,
    undo: Vec<Undo>,
}

pub(crate) fn dir(v: Point) -> f64 {
    v.y.atan2(v.x)
}

/// Isometry (with the given handedness) taking `a ↦ pa` and the direction
/// of `b − a` onto the direction of `pb − pa`.
pub(crate) fn pose_mapping(a: Point, b: Point, pa: Point, pb: Point, reflected: bool) -> Pose {
    let d = b - a;
    let md = if reflected { d.mirror_x() } else { d };
    let theta = dir(pb - pa) - dir(md);
    let linear = Pose::new(theta, Point::origin(), reflected);
    Pose::new(theta, pa - linear.apply_vector(a), reflected)
}

/// Parameter of `p` along `a → b` when `p` lies strictly inside the segment.
fn inside_segment(p: Point, a: Point, b: Point, tol: f64) -> Option<f64> {
    let e = b - a;
    let len = e.norm();
    let t = (p - a).dot(e) / (len * len);
    let dist = e.cross(p - a).abs() / len;
    (dist <= tol && t * len > tol && (1.0 - t) * len > tol).then_some(t)
}

impl<'a> Board<'a> {
    /// Board holding `region` (which must be hole-free and connected), ready
    /// to surround it.
    pub fn new(pent: &'a Pentagon, mode: PlacementModel, region: &[Pose]) -> Result<Self, GeomError> {
        let scale = pent.longest_edge();
        let mut board = Board {
            pent,
            base: pent.vertices(),
            angles_deg: pent.angles_deg(),
            scale,
            tol: POINT_TOL * scale,
            combos: AngleCombos::new(pent.angles_deg(), 360.0),
            mode,
            tiles: Vec::new(),
            verts: Vec::new(),
            grid: HashMap::new(),
            cell: 1e-3 * scale,
            region: Vec::new(),
            region_tiles: region.len(),
            must: Vec::new(),
            undo: Vec::new(),
        };
        for pose in region {
            board
                .commit(*pose, true)
                .expect("unchecked commit always succeeds");
        }
        board.undo.clear();
        if region.is_empty() {
            return Ok(board);
        }
        let polys: Vec<Polygon> = board.tiles.iter().map(|t| t.poly.clone()).collect();
        let boundary = trace_boundary(&polys)?;
        let n = boundary.len();
        for i in 0..n {
            let p = boundary.vertices[i].point;
            let prev = boundary.vertices[(i + n - 1) % n].point;
            board.region.push((p, boundary.vertices[(i + 1) % n].point));
            let vid = board
                .lookup(p)
                .expect("boundary points are tile corners");
            board.verts[vid].rank = Some((i, 0.0));
            board.verts[vid].ref_dir = Some(dir(prev - p));
            board.must.push(((i, 0.0), vid));
        }
        Ok(board)
    }

    fn key(&self, p: Point) -> (i64, i64) {
        ((p.x / self.cell).floor() as i64, (p.y / self.cell).floor() as i64)
    }

    pub fn lookup(&self, p: Point) -> Option<usize> {
        let (kx, ky) = self.key(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.grid.get(&(kx + dx, ky + dy)) {
                    for &id in ids {
                        if self.verts[id].p.distance(p) <= self.tol {
                            return Some(id);
                        }
                    }
                }
            }
        }
        None
    }

    fn add_vertex(&mut self, p: Point) -> usize {
        let id = self.verts.len();
        let mut v = Vertex {
            p,
            contacts: Vec::new(),
            rank: None,
            ref_dir: None,
        };
        // new points on the region's edges must be closed up as well
        for (i, &(a, b)) in self.region.iter().enumerate() {
            if let Some(t) = inside_segment(p, a, b, self.tol) {
                v.rank = Some((i, t));
                v.ref_dir = Some(dir(a - p));
                let pos = self
                    .must
                    .partition_point(|&(r, _)| r.0 < i || (r.0 == i && r.1 < t));
                self.must.insert(pos, ((i, t), id));
                break;
            }
        }
        self.verts.push(v);
        let k = self.key(p);
        self.grid.entry(k).or_default().push(id);
        id
    }

    pub fn is_must(&self, vid: usize) -> bool {
        self.verts[vid].rank.is_some()
    }

    pub fn tile_from_pose(&self, pose: Pose) -> Tile {
        let corners = self.base.map(|b| pose.apply(b));
        let poly = apply_isometry(&pose, &self.pent.polygon()).to_ccw();
        let (lo, hi) = poly.bbox();
        Tile {
            pose,
            corners,
            poly,
            lo,
            hi,
        }
    }

    /// True when `tile` overlaps no placed tile by more than the tolerance.
    pub fn fits(&self, tile: &Tile) -> bool {
        let limit = OVERLAP_TOL * self.scale * self.scale;
        self.tiles.iter().all(|t| {
            t.lo.x >= tile.hi.x - self.tol
                || tile.lo.x >= t.hi.x - self.tol
                || t.lo.y >= tile.hi.y - self.tol
                || tile.lo.y >= t.hi.y - self.tol
                || overlap_area(&t.poly, &tile.poly) <= limit
        })
    }

    fn corner_contact(&self, ti: usize, corners: &[Point; 5], reflected: bool, k: usize) -> Contact {
        let v = corners[k];
        let next = corners[(k + 1) % 5];
        let prev = corners[(k + 4) % 5];
        let (start_far, end_far) = if reflected { (prev, next) } else { (next, prev) };
        Contact {
            tile: ti,
            start: dir(start_far - v),
            sweep: self.pent.angles[k],
            end_far,
            corner: Some(CornerLabel::from_index(k)),
        }
    }

    /// Half-plane contact of edge `k → k+1` of a tile at a point inside it.
    fn edge_contact(ti: usize, corners: &[Point; 5], reflected: bool, k: usize, x: Point) -> Contact {
        let a = corners[k];
        let b = corners[(k + 1) % 5];
        // unreflected tiles lie left of a → b
        let (start_far, end_far) = if reflected { (a, b) } else { (b, a) };
        Contact {
            tile: ti,
            start: dir(start_far - x),
            sweep: PI,
            end_far,
            corner: None,
        }
    }

    /// Adds a tile and its contacts. In edge-to-edge mode (`allow_t = false`)
    /// a tile whose corner falls inside another edge, or whose edge runs
    /// through an existing point, is refused and nothing changes. Returns the
    /// points whose wedges changed.
    pub fn commit(&mut self, pose: Pose, allow_t: bool) -> Option<Vec<usize>> {
        let tile = self.tile_from_pose(pose);
        let reflected = pose.reflected;
        let ti = self.tiles.len();
        let corners = tile.corners;

        let ids: Vec<Option<usize>> = corners.iter().map(|&c| self.lookup(c)).collect();
        // new corners landing inside existing edges
        let mut through_new: Vec<(usize, usize, usize)> = Vec::new();
        for (k, &c) in corners.iter().enumerate() {
            if ids[k].is_some() {
                continue;
            }
            for (tj, t) in self.tiles.iter().enumerate() {
                if c.x < t.lo.x - self.tol
                    || c.x > t.hi.x + self.tol
                    || c.y < t.lo.y - self.tol
                    || c.y > t.hi.y + self.tol
                {
                    continue;
                }
                for e in 0..5 {
                    if inside_segment(c, t.corners[e], t.corners[(e + 1) % 5], self.tol).is_some() {
                        if !allow_t {
                            return None;
                        }
                        through_new.push((k, tj, e));
                    }
                }
            }
        }
        // existing points inside the new tile's edges
        let mut through_old: Vec<(usize, usize)> = Vec::new();
        for (vid, v) in self.verts.iter().enumerate() {
            let p = v.p;
            if p.x < tile.lo.x - self.tol
                || p.x > tile.hi.x + self.tol
                || p.y < tile.lo.y - self.tol
                || p.y > tile.hi.y + self.tol
            {
                continue;
            }
            for e in 0..5 {
                if inside_segment(p, corners[e], corners[(e + 1) % 5], self.tol).is_some() {
                    if !allow_t {
                        return None;
                    }
                    through_old.push((vid, e));
                }
            }
        }

        let mut undo = Undo {
            verts_before: self.verts.len(),
            pushed: Vec::new(),
        };
        let mut affected = Vec::new();
        let mut corner_ids = [0usize; 5];
        for k in 0..5 {
            let vid = match ids[k] {
                Some(id) => id,
                None => self.add_vertex(corners[k]),
            };
            corner_ids[k] = vid;
            let c = self.corner_contact(ti, &corners, reflected, k);
            self.verts[vid].contacts.push(c);
            undo.pushed.push(vid);
            affected.push(vid);
        }
        for (k, tj, e) in through_new {
            let vid = corner_ids[k];
            let t = &self.tiles[tj];
            let c = Self::edge_contact(tj, &t.corners, t.pose.reflected, e, corners[k]);
            self.verts[vid].contacts.push(c);
            undo.pushed.push(vid);
        }
        for (vid, e) in through_old {
            let c = Self::edge_contact(ti, &corners, reflected, e, self.verts[vid].p);
            self.verts[vid].contacts.push(c);
            undo.pushed.push(vid);
            affected.push(vid);
        }
        self.tiles.push(tile);
        self.undo.push(undo);
        affected.sort_unstable();
        affected.dedup();
        Some(affected)
    }

    /// Removes the most recently committed tile.
    pub fn pop(&mut self) {
        let undo = self.undo.pop().expect("nothing to undo");
        self.tiles.pop();
        for &vid in undo.pushed.iter().rev() {
            if vid < undo.verts_before {
                self.verts[vid].contacts.pop();
            }
        }
        while self.verts.len() > undo.verts_before {
            let id = self.verts.len() - 1;
            let v = self.verts.pop().unwrap();
            let k = self.key(v.p);
            if let Some(list) = self.grid.get_mut(&k) {
                list.retain(|&x| x != id);
            }
            if v.rank.is_some() {
                self.must.retain(|&(_, m)| m != id);
            }
        }
    }

    /// Uncovered arcs at a point, counterclockwise from where the region's
    /// wedge ends. `None` when two wedges overlap.
    pub fn arcs(&self, vid: usize) -> Option<Vec<Arc>> {
        let v = &self.verts[vid];
        if v.contacts.is_empty() {
            return Some(Vec::new());
        }
        let refd = v
            .ref_dir
            .unwrap_or(v.contacts[0].start + v.contacts[0].sweep);
        let rel = |x: f64| {
            let r = (x - refd).rem_euclid(TAU);
            if r > TAU - 1e-9 {
                r - TAU
            } else {
                r
            }
        };
        let mut items: Vec<(f64, f64, usize)> = v
            .contacts
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let s = rel(c.start);
                (s, s + c.sweep, i)
            })
            .collect();
        items.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
        let mut prev = items
            .iter()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .map(|x| x.2)
            .unwrap();
        let mut cursor = 0.0;
        let mut out = Vec::new();
        for &(s, e, i) in &items {
            if s > cursor + ANGLE_TOL {
                out.push(Arc {
                    width: s - cursor,
                    prev,
                });
            } else if s < cursor - ANGLE_TOL {
                return None;
            }
            if e > cursor {
                cursor = e;
                prev = i;
            }
        }
        if cursor > TAU + ANGLE_TOL {
            return None;
        }
        if cursor < TAU - ANGLE_TOL {
            out.push(Arc {
                width: TAU - cursor,
                prev,
            });
        }
        Some(out)
    }

    /// Whether an open angle (degrees) can still be filled under the
    /// placement model.
    pub fn fillable(&self, gap_deg: f64) -> bool {
        let tol = AngleCombos::TOL_DEG;
        if gap_deg < -tol {
            return false;
        }
        if gap_deg <= tol || self.combos.contains(gap_deg) {
            return true;
        }
        self.mode == PlacementModel::EecPlusCollinear
            && gap_deg >= 180.0 - tol
            && self.combos.contains(gap_deg - 180.0)
    }

    /// Every open arc at the point is fillable and no wedges overlap.
    pub fn vertex_ok(&self, vid: usize) -> bool {
        match self.arcs(vid) {
            Some(arcs) => arcs.iter().all(|a| self.fillable(a.width.to_degrees())),
            None => false,
        }
    }

    /// First region point (in boundary order) that is not closed yet.
    pub fn anchor(&self) -> Option<(usize, Arc)> {
        self.must.iter().find_map(|&(_, vid)| {
            self.arcs(vid)
                .and_then(|a| a.first().copied())
                .map(|a| (vid, a))
        })
    }

    /// Closest registered point strictly inside `v → w`, or `w` itself.
    fn nearest_on_ray(&self, v: Point, w: Point) -> Point {
        let mut best = w;
        let mut best_d = v.distance(w);
        for u in &self.verts {
            if inside_segment(u.p, v, w, self.tol).is_some() {
                let d = v.distance(u.p);
                if d < best_d {
                    best = u.p;
                    best_d = d;
                }
            }
        }
        best
    }

    /// Poses for tiles filling `arc` at point `vid` from its start ray.
    pub fn candidates(&self, vid: usize, arc: &Arc, reflections: bool) -> Vec<Pose> {
        let v = self.verts[vid].p;
        let w = self.verts[vid].contacts[arc.prev].end_far;
        let collinear = self.mode == PlacementModel::EecPlusCollinear;
        let w = if collinear { self.nearest_on_ray(v, w) } else { w };
        let len = v.distance(w);
        let u = (w - v) * (1.0 / len);
        let arc_deg = arc.width.to_degrees();
        let chiralities: &[bool] = if reflections { &[false, true] } else { &[false] };

        let mut out: Vec<Pose> = Vec::new();
        let mut seen: Vec<[(i64, i64); 5]> = Vec::new();
        let mut push = |pose: Pose, out: &mut Vec<Pose>| {
            let key = region_key(&self.base.map(|b| pose.apply(b)), self.scale);
            if !seen.contains(&key) {
                seen.push(key);
                out.push(pose);
            }
        };

        for k in 0..5 {
            for &refl in chiralities {
                let nb = if refl { (k + 4) % 5 } else { (k + 1) % 5 };
                let l = self.base[k].distance(self.base[nb]);
                if !collinear && (l - len).abs() > self.tol {
                    continue;
                }
                if !self.fillable(arc_deg - self.angles_deg[k]) {
                    continue;
                }
                let pose = pose_mapping(self.base[k], self.base[nb], v, v + u * l, refl);
                push(pose, &mut out);
            }
        }
        // a tile edge anchored at w and running on through v
        if collinear && arc.width >= PI - ANGLE_TOL && self.fillable(arc_deg - 180.0) {
            let back = u * -1.0;
            for k in 0..5 {
                for &refl in chiralities {
                    let (a, b) = (self.base[k], self.base[(k + 1) % 5]);
                    let l = a.distance(b);
                    if l <= len + self.tol {
                        continue;
                    }
                    for (p0, p1) in [(a, b), (b, a)] {
                        let pose = pose_mapping(p0, p1, w, w + back * l, refl);
                        let c = pose.apply(self.pent.polygon().centroid());
                        if (w - v).cross(c - v) > 0.0 {
                            push(pose, &mut out);
                        }
                    }
                }
            }
        }
        out
    }

    /// Tile poses beyond the region, in placement order.
    pub fn layer_poses(&self) -> Vec<Pose> {
        self.tiles[self.region_tiles..].iter().map(|t| t.pose).collect()
    }

    pub fn all_polygons(&self) -> Vec<Polygon> {
        self.tiles.iter().map(|t| t.poly.clone()).collect()
    }
}

/// Label-free identity of a placed tile: its corner set, quantized.
pub(crate) fn region_key(corners: &[Point; 5], scale: f64) -> [(i64, i64); 5] {
    let q = 1e-6 * scale;
    let mut k = corners.map(|c| ((c.x / q).round() as i64, (c.y / q).round() as i64));
    k.sort_unstable();
    k
}
