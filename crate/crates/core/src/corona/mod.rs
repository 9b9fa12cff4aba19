//! Corona search: surrounding a tile (or a cluster of tiles) with congruent
//! copies, layer by layer, and bounding the Heesch number.
//!
//! Placements are generated at a canonical anchor: the first point along the
//! boundary of the region being surrounded that still has an open arc, filled
//! counterclockwise from the arc's start ray. In edge-to-edge mode a new tile
//! glues one full edge onto the edge lying along that ray; the collinear mode
//! also lets the tile's edge run past the anchor (vertex-on-edge contact).
//! Continuous sliding contacts are out of scope, so every report is a bound
//! relative to its placement model.

mod board;
pub mod cluster;
mod search;
pub mod validate;

use std::cell::Cell;
use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::CornerLabel;
use crate::combos::brute_force_witness;
use crate::geom::{trace_boundary, Boundary, GeomError};
use crate::solver::Pentagon;
use crate::{Point, Polygon, Pose};

use board::{pose_mapping, region_key, Board};
use search::{Flow, Searcher};

pub use cluster::{enumerate_clusters, find_cluster_surrounded_once, surround_cluster, ClusterResult};
pub use validate::{validate_patch, PatchValidation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PlacementModel {
    #[default]
    EecOnly,
    EecPlusCollinear,
}

impl PlacementModel {
    /// Completeness caveat attached to every report.
    pub fn caveat(&self) -> &'static str {
        match self {
            Self::EecOnly => {
                "edge-to-edge placements only; non-edge-to-edge coronas are not searched"
            }
            Self::EecPlusCollinear => {
                "edge-to-edge plus vertex-anchored collinear placements; \
                 continuous sliding contacts are not searched"
            }
        }
    }
}

impl fmt::Display for PlacementModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::EecOnly => "eec",
            Self::EecPlusCollinear => "eec+collinear",
        })
    }
}

impl FromStr for PlacementModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "eec" => Ok(Self::EecOnly),
            "eec+collinear" => Ok(Self::EecPlusCollinear),
            _ => Err(format!("unknown placement mode {s:?} (expected eec or eec+collinear)")),
        }
    }
}

#[derive(Debug, Error)]
pub enum CoronaError {
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("invalid kernel: {0}")]
    InvalidKernel(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub mode: PlacementModel,
    pub layer_limit: usize,
    /// Node budget shared by all searches of one call.
    pub budget: u64,
    pub reflections: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            mode: PlacementModel::EecOnly,
            layer_limit: 3,
            budget: 10_000_000,
            reflections: true,
        }
    }
}

/// Pose of one copy of the pentagon (applied to the solver's coordinates,
/// corner A at the origin and edge b along +x).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub x: f64,
    pub y: f64,
    pub theta_rad: f64,
    pub reflected: bool,
}

impl Placement {
    pub fn identity() -> Self {
        Self::from_pose(&Pose::identity())
    }

    pub fn from_pose(g: &Pose) -> Self {
        Self {
            x: g.translation.x,
            y: g.translation.y,
            theta_rad: g.rotation,
            reflected: g.reflected,
        }
    }

    pub fn pose(&self) -> Pose {
        Pose::new(self.theta_rad, Point::new(self.x, self.y), self.reflected)
    }

    /// Corner positions A..E of this copy.
    pub fn corners(&self, p: &Pentagon) -> [Point; 5] {
        let g = self.pose();
        p.vertices().map(|v| g.apply(v))
    }

    /// Counterclockwise polygon of this copy.
    pub fn polygon(&self, p: &Pentagon) -> Polygon {
        crate::geom::apply_isometry(&self.pose(), &p.polygon()).to_ccw()
    }
}

/// A kernel and the layers placed around it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Patch {
    pub pentagon: Pentagon,
    pub kernel: Vec<Placement>,
    pub layers: Vec<Vec<Placement>>,
    pub mode: PlacementModel,
}

impl Patch {
    pub fn single(p: &Pentagon, mode: PlacementModel) -> Self {
        Self {
            pentagon: p.clone(),
            kernel: vec![Placement::identity()],
            layers: Vec::new(),
            mode,
        }
    }

    /// Kernel first, then the layers in order.
    pub fn placements(&self) -> impl Iterator<Item = &Placement> {
        self.kernel.iter().chain(self.layers.iter().flatten())
    }

    pub fn tile_count(&self) -> usize {
        self.placements().count()
    }

    pub fn polygons(&self) -> Vec<Polygon> {
        self.placements().map(|pl| pl.polygon(&self.pentagon)).collect()
    }

    pub fn boundary(&self) -> Result<Boundary<f64>, GeomError> {
        trace_boundary(&self.polygons())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("patch serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// True when some placement is not edge-to-edge with the others, i.e. a
    /// corner lies inside another tile's edge.
    pub fn has_t_junction(&self) -> bool {
        let polys = self.polygons();
        let scale = self.pentagon.longest_edge();
        let tol = board::POINT_TOL * scale;
        polys.iter().enumerate().any(|(i, p)| {
            polys.iter().enumerate().any(|(j, q)| {
                i != j
                    && p.vertices().iter().any(|&v| {
                        (0..q.len()).any(|e| {
                            let a = q.vertices()[e];
                            let b = q.vertices()[(e + 1) % q.len()];
                            let d = b - a;
                            let len = d.norm();
                            let t = (v - a).dot(d) / (len * len);
                            d.cross(v - a).abs() / len <= tol
                                && t * len > tol
                                && (1.0 - t) * len > tol
                        })
                    })
            })
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HeeschStatus {
    SurroundedKTimes,
    NoFirstCorona,
    DeadSpotCertificate,
    SearchExhausted,
    LayerLimitReached,
}

/// A boundary point whose open angle no combination of corners can fill.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeadSpotCertificate {
    pub point: [f64; 2],
    /// Corners meeting at the point, in counterclockwise order. Tiles whose
    /// edge runs straight through the point are not listed here but count
    /// 180° towards `covered_deg`.
    pub corners: Vec<CornerLabel>,
    pub covered_deg: f64,
    pub gap_deg: f64,
    /// Independent exhaustive subset-sum check: most corners that could fit,
    /// and how many count vectors were tried.
    pub max_terms: u32,
    pub combinations_checked: u64,
    /// Whether a straight (180°) contact was also allowed for.
    pub straight_allowed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeeschReport {
    pub layers_completed: usize,
    pub status: HeeschStatus,
    pub certificate: Option<DeadSpotCertificate>,
    pub placement_model: PlacementModel,
    pub caveat: String,
    pub layer_limit: usize,
    pub nodes: u64,
    pub coronas_examined: u64,
    /// The deepest patch reached.
    pub patch: Option<Patch>,
}

impl HeeschReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Search frame: the first kernel tile is moved to the identity pose, which
/// makes the search order independent of where the kernel sits.
struct Frame {
    to_world: Pose,
}

impl Frame {
    fn new(kernel: &[Placement]) -> Result<(Self, Vec<Pose>), CoronaError> {
        let first = kernel
            .first()
            .ok_or_else(|| CoronaError::InvalidKernel("empty kernel".into()))?;
        let to_world = first.pose();
        let inv = to_world.inverse();
        let local = kernel.iter().map(|k| inv.compose(&k.pose())).collect();
        Ok((Self { to_world }, local))
    }

    fn placement(&self, g: &Pose) -> Placement {
        Placement::from_pose(&self.to_world.compose(g))
    }

    fn point(&self, p: Point) -> [f64; 2] {
        let q = self.to_world.apply(p);
        [q.x, q.y]
    }

    fn patch(&self, p: &Pentagon, mode: PlacementModel, layers: &[Vec<Pose>]) -> Patch {
        Patch {
            pentagon: p.clone(),
            kernel: layers[0].iter().map(|g| self.placement(g)).collect(),
            layers: layers[1..]
                .iter()
                .map(|l| l.iter().map(|g| self.placement(g)).collect())
                .collect(),
            mode,
        }
    }
}

fn check_kernel(p: &Pentagon, kernel: &[Pose], mode: PlacementModel) -> Result<(), CoronaError> {
    let mut board = Board::new(p, mode, &[]).map_err(CoronaError::Geom)?;
    for (i, g) in kernel.iter().enumerate() {
        let tile = board.tile_from_pose(*g);
        if !board.fits(&tile) {
            return Err(CoronaError::InvalidKernel(format!("tile {i} overlaps another")));
        }
        board.commit(*g, true);
    }
    trace_boundary(&board.all_polygons())?;
    Ok(())
}

fn hole_free(b: &Board) -> bool {
    trace_boundary(&b.all_polygons()).is_ok()
}

/// Corner labels around a point, counterclockwise, starting with the wedge
/// that ends where the region's wedge ends (or with `first_tile`'s corner).
fn corners_around(b: &Board, vid: usize, first_tile: Option<usize>) -> Vec<CornerLabel> {
    let v = &b.verts[vid];
    let mut cs: Vec<_> = v.contacts.iter().filter(|c| c.corner.is_some()).collect();
    if cs.is_empty() {
        return Vec::new();
    }
    let refd = match first_tile.and_then(|t| cs.iter().find(|c| c.tile == t)) {
        Some(c) => c.start,
        None => cs[0].start,
    };
    cs.sort_by(|x, y| {
        let rx = (x.start - refd + 1e-9).rem_euclid(TAU);
        let ry = (y.start - refd + 1e-9).rem_euclid(TAU);
        rx.total_cmp(&ry)
    });
    cs.iter().map(|c| c.corner.unwrap()).collect()
}

/// Dead points on the boundary of `region`, most telling first: fewest
/// corners, then widest gap, then boundary order.
fn dead_spots(p: &Pentagon, mode: PlacementModel, region: &[Pose]) -> Result<Vec<(usize, Vec<CornerLabel>, f64, f64, Point)>, CoronaError> {
    let board = Board::new(p, mode, region)?;
    let mut out = Vec::new();
    for &(_, vid) in &board.must {
        let arcs = board.arcs(vid).unwrap_or_default();
        let Some(bad) = arcs.iter().find(|a| !board.fillable(a.width.to_degrees())) else {
            continue;
        };
        let corners = corners_around(&board, vid, None);
        let covered: f64 = board.verts[vid].contacts.iter().map(|c| c.sweep).sum();
        out.push((
            corners.len(),
            corners,
            covered.to_degrees(),
            bad.width.to_degrees(),
            board.verts[vid].p,
        ));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0).then(y.3.total_cmp(&x.3)));
    Ok(out)
}

/// Certificate for one dead point, cross-checked against the exhaustive
/// subset-sum oracle.
fn certify(p: &Pentagon, mode: PlacementModel, corners: Vec<CornerLabel>, covered_deg: f64, gap_deg: f64, point: [f64; 2]) -> DeadSpotCertificate {
    let angles = p.angles_deg();
    let min = angles.iter().cloned().fold(f64::INFINITY, f64::min);
    let tol = crate::combos::AngleCombos::TOL_DEG;
    let (w, checked) = brute_force_witness(&angles, gap_deg, tol);
    let straight_allowed = mode == PlacementModel::EecPlusCollinear;
    let mut total = checked;
    let mut witnessed = w.is_some();
    if straight_allowed && gap_deg >= 180.0 - tol {
        let (w2, c2) = brute_force_witness(&angles, gap_deg - 180.0, tol);
        total += c2;
        witnessed |= w2.is_some();
    }
    assert!(!witnessed, "dead spot rejected by the exhaustive oracle");
    DeadSpotCertificate {
        point,
        corners,
        covered_deg,
        gap_deg,
        max_terms: ((gap_deg + tol) / min).floor() as u32,
        combinations_checked: total,
        straight_allowed,
    }
}

fn certificate(p: &Pentagon, mode: PlacementModel, region: &[Pose], frame: &Frame) -> Result<Option<DeadSpotCertificate>, CoronaError> {
    let Some((_, corners, covered, gap, point)) = dead_spots(p, mode, region)?.into_iter().next() else {
        return Ok(None);
    };
    Ok(Some(certify(p, mode, corners, covered, gap, frame.point(point))))
}

/// Every dead point on the outer boundary of `patch`: open angles that no
/// combination of corners (and, in collinear mode, no straight contact)
/// can fill.
pub fn dead_spots_of(patch: &Patch) -> Result<Vec<DeadSpotCertificate>, CoronaError> {
    let all: Vec<Placement> = patch.placements().copied().collect();
    let (frame, local) = Frame::new(&all)?;
    Ok(dead_spots(&patch.pentagon, patch.mode, &local)?
        .into_iter()
        .map(|(_, corners, covered, gap, point)| certify(&patch.pentagon, patch.mode, corners, covered, gap, frame.point(point)))
        .collect())
}

struct Explorer<'a, 'n> {
    p: &'a Pentagon,
    cfg: SearchConfig,
    nodes: &'n Cell<u64>,
    best: usize,
    best_layers: Vec<Vec<Pose>>,
    /// `clean[d]`: some d-th corona without a dead spot was found.
    clean: Vec<bool>,
    cert_layers: Option<Vec<Vec<Pose>>>,
    coronas: u64,
}

impl Explorer<'_, '_> {
    fn searcher(&self, prune_outer: bool) -> Searcher<'_> {
        Searcher {
            reflections: self.cfg.reflections,
            prune_outer,
            only: None,
            budget: self.cfg.budget,
            nodes: self.nodes,
        }
    }

    fn note(&mut self, layers: &[Vec<Pose>]) {
        let depth = layers.len() - 1;
        if depth > self.best {
            self.best = depth;
            self.best_layers = layers.to_vec();
        }
    }

    /// Tries to add layers beyond `layers` (kernel first). True once the
    /// layer limit is reached.
    fn extend(&mut self, layers: &[Vec<Pose>]) -> Result<bool, CoronaError> {
        let k = layers.len() - 1;
        if k >= self.cfg.layer_limit {
            return Ok(true);
        }
        let prune = k + 1 < self.cfg.layer_limit;
        let region: Vec<Pose> = layers.concat();
        let mut board = Board::new(self.p, self.cfg.mode, &region)?;
        let mut found = false;
        let nodes = self.nodes;
        let searcher = Searcher {
            reflections: self.cfg.reflections,
            prune_outer: prune,
            only: None,
            budget: self.cfg.budget,
            nodes,
        };
        let flow = searcher.run(&mut board, &mut |b: &Board| {
            if !hole_free(b) {
                return Ok(Flow::Continue);
            }
            found = true;
            self.coronas += 1;
            let mut next = layers.to_vec();
            next.push(b.layer_poses());
            self.note(&next);
            if self.clean.len() <= k + 1 {
                self.clean.resize(k + 2, false);
            }
            self.clean[k + 1] |= prune;
            Ok(if self.extend(&next)? { Flow::Stop } else { Flow::Continue })
        })?;
        if flow == Flow::Stop {
            return Ok(true);
        }
        if !found && prune && self.best <= k {
            // is there a corona at all? every one of them has a dead spot
            let mut board = Board::new(self.p, self.cfg.mode, &region)?;
            let mut first = None;
            self.searcher(false).run(&mut board, &mut |b: &Board| {
                if !hole_free(b) {
                    return Ok(Flow::Continue);
                }
                first = Some(b.layer_poses());
                Ok(Flow::Stop)
            })?;
            if let Some(layer) = first {
                self.coronas += 1;
                let mut next = layers.to_vec();
                next.push(layer);
                self.note(&next);
                if self.cert_layers.as_ref().is_none_or(|c| c.len() < next.len()) {
                    self.cert_layers = Some(next);
                }
            }
        }
        Ok(false)
    }
}

/// Heesch-number bound for a kernel (by default a single tile).
pub fn heesch_bound_kernel(p: &Pentagon, kernel: &[Placement], cfg: &SearchConfig) -> Result<HeeschReport, CoronaError> {
    if cfg.layer_limit == 0 {
        return Err(CoronaError::InvalidKernel("layer limit must be at least 1".into()));
    }
    let (frame, local) = Frame::new(kernel)?;
    check_kernel(p, &local, cfg.mode)?;
    let nodes = Cell::new(0);
    let mut ex = Explorer {
        p,
        cfg: *cfg,
        nodes: &nodes,
        best: 0,
        best_layers: vec![local.clone()],
        clean: vec![true],
        cert_layers: None,
        coronas: 0,
    };
    let reached = ex.extend(&[local.clone()])?;
    let best = ex.best;
    let mut certificate_out = None;
    let status = if reached {
        HeeschStatus::LayerLimitReached
    } else if best == 0 {
        // a dead spot on the kernel itself explains the failure
        certificate_out = certificate(p, cfg.mode, &local, &frame)?;
        HeeschStatus::NoFirstCorona
    } else if !ex.clean.get(best).copied().unwrap_or(false) {
        let layers = ex.cert_layers.clone().unwrap_or_else(|| ex.best_layers.clone());
        certificate_out = certificate(p, cfg.mode, &layers.concat(), &frame)?;
        if certificate_out.is_some() {
            HeeschStatus::DeadSpotCertificate
        } else {
            HeeschStatus::SearchExhausted
        }
    } else {
        HeeschStatus::SearchExhausted
    };
    Ok(HeeschReport {
        layers_completed: best,
        status,
        certificate: certificate_out,
        placement_model: cfg.mode,
        caveat: cfg.mode.caveat().into(),
        layer_limit: cfg.layer_limit,
        nodes: nodes.get(),
        coronas_examined: ex.coronas,
        patch: Some(frame.patch(p, cfg.mode, &ex.best_layers)),
    })
}

/// Iteratively surrounds a single tile until a layer fails or the limit is hit.
pub fn heesch_bound(p: &Pentagon, cfg: &SearchConfig) -> Result<HeeschReport, CoronaError> {
    heesch_bound_kernel(p, &[Placement::identity()], cfg)
}

/// One surrounding layer around `kernel`: the first corona found, if any.
pub fn surround(p: &Pentagon, kernel: &[Placement], cfg: &SearchConfig) -> Result<(HeeschReport, Option<Patch>), CoronaError> {
    let (frame, local) = Frame::new(kernel)?;
    check_kernel(p, &local, cfg.mode)?;
    let nodes = Cell::new(0);
    let mut board = Board::new(p, cfg.mode, &local)?;
    let mut layer = None;
    Searcher {
        reflections: cfg.reflections,
        prune_outer: false,
        only: None,
        budget: cfg.budget,
        nodes: &nodes,
    }
    .run(&mut board, &mut |b: &Board| {
        if !hole_free(b) {
            return Ok(Flow::Continue);
        }
        layer = Some(b.layer_poses());
        Ok(Flow::Stop)
    })?;
    let (status, certificate_out, patch) = match layer {
        Some(l) => (
            HeeschStatus::SurroundedKTimes,
            None,
            Some(frame.patch(p, cfg.mode, &[local.clone(), l])),
        ),
        None => (
            HeeschStatus::NoFirstCorona,
            certificate(p, cfg.mode, &local, &frame)?,
            None,
        ),
    };
    let report = HeeschReport {
        layers_completed: usize::from(patch.is_some()),
        status,
        certificate: certificate_out,
        placement_model: cfg.mode,
        caveat: cfg.mode.caveat().into(),
        layer_limit: 1,
        nodes: nodes.get(),
        coronas_examined: u64::from(patch.is_some()),
        patch: patch.clone(),
    };
    Ok((report, patch))
}

/// Isometries of the plane mapping the kernel (as a set of regions) onto itself.
fn kernel_symmetries(p: &Pentagon, kernel: &[Pose]) -> Vec<Pose> {
    let base = p.vertices();
    let scale = p.longest_edge();
    let base_key = region_key(&base, scale);
    let mut selfmaps = Vec::new();
    for k in 0..5 {
        for refl in [false, true] {
            let nb = if refl { (k + 4) % 5 } else { (k + 1) % 5 };
            let g = pose_mapping(base[0], base[1], base[k], base[nb], refl);
            if region_key(&base.map(|b| g.apply(b)), scale) == base_key {
                selfmaps.push(g);
            }
        }
    }
    let keys_of = |poses: &[Pose], h: &Pose| -> Vec<[(i64, i64); 5]> {
        let mut v: Vec<_> = poses
            .iter()
            .map(|g| region_key(&base.map(|b| h.apply(g.apply(b))), scale))
            .collect();
        v.sort_unstable();
        v
    };
    let target = keys_of(kernel, &Pose::identity());
    let inv0 = kernel[0].inverse();
    let mut out: Vec<Pose> = Vec::new();
    let mut seen = BTreeSet::new();
    for t in kernel {
        for s in &selfmaps {
            let h = t.compose(s).compose(&inv0);
            if keys_of(kernel, &h) == target {
                // identify maps by where they send two reference points
                let key = region_key(
                    &[
                        h.apply(base[0]),
                        h.apply(base[1] * 2.0),
                        h.apply(base[2] * 3.0),
                        h.apply(base[3] * 4.0),
                        h.apply(base[4] * 5.0),
                    ],
                    scale,
                );
                if seen.insert(key) {
                    out.push(h);
                }
            }
        }
    }
    out
}

fn layer_key(p: &Pentagon, layer: &[Pose], syms: &[Pose]) -> Vec<[(i64, i64); 5]> {
    let base = p.vertices();
    let scale = p.longest_edge();
    syms.iter()
        .map(|h| {
            let mut v: Vec<_> = layer
                .iter()
                .map(|g| region_key(&base.map(|b| h.apply(g.apply(b))), scale))
                .collect();
            v.sort_unstable();
            v
        })
        .min()
        .unwrap_or_default()
}

/// All distinct first coronas around `kernel`, up to the kernel's own
/// symmetries, in discovery order.
pub fn census(p: &Pentagon, kernel: &[Placement], cfg: &SearchConfig) -> Result<Vec<Patch>, CoronaError> {
    let (frame, local) = Frame::new(kernel)?;
    check_kernel(p, &local, cfg.mode)?;
    let syms = kernel_symmetries(p, &local);
    let nodes = Cell::new(0);
    let mut board = Board::new(p, cfg.mode, &local)?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    Searcher {
        reflections: cfg.reflections,
        prune_outer: false,
        only: None,
        budget: cfg.budget,
        nodes: &nodes,
    }
    .run(&mut board, &mut |b: &Board| {
        if !hole_free(b) {
            return Ok(Flow::Continue);
        }
        let layer = b.layer_poses();
        if seen.insert(layer_key(p, &layer, &syms)) {
            out.push(frame.patch(p, cfg.mode, &[local.clone(), layer]));
        }
        Ok(Flow::Continue)
    })?;
    Ok(out)
}

/// One way of closing up a single kernel corner.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnchorFilling {
    pub placements: Vec<Placement>,
    /// Counterclockwise arrangement at the corner, kernel corner first.
    pub word: String,
    /// Other kernel corners left with an open angle no corner combination fills.
    pub dead_spots: Vec<DeadSpotCertificate>,
}

/// Every way of closing the open angle at `corner` of a lone tile, pruned
/// only by the angle sum at that corner and by overlaps.
pub fn anchor_fillings(p: &Pentagon, corner: CornerLabel, cfg: &SearchConfig) -> Result<Vec<AnchorFilling>, CoronaError> {
    let kernel = [Pose::identity()];
    let frame = Frame {
        to_world: Pose::identity(),
    };
    let nodes = Cell::new(0);
    let mut board = Board::new(p, cfg.mode, &kernel)?;
    let target = board
        .lookup(p.vertices()[corner.index()])
        .expect("kernel corner registered");
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let syms = kernel_symmetries(p, &kernel);
    Searcher {
        reflections: cfg.reflections,
        prune_outer: false,
        only: Some(target),
        budget: cfg.budget,
        nodes: &nodes,
    }
    .run(&mut board, &mut |b: &Board| {
        let layer = b.layer_poses();
        if !seen.insert(layer_key(p, &layer, &syms)) {
            return Ok(Flow::Continue);
        }
        let word: String = corners_around(b, target, Some(0))
            .iter()
            .map(|c| c.as_char())
            .collect();
        let mut dead = Vec::new();
        for &(_, vid) in &b.must {
            if vid == target {
                continue;
            }
            let Some(arcs) = b.arcs(vid) else { continue };
            if let Some(a) = arcs.iter().find(|a| !b.fillable(a.width.to_degrees())) {
                let covered = b.verts[vid].contacts.iter().map(|c| c.sweep).sum::<f64>().to_degrees();
                dead.push(certify(
                    p,
                    cfg.mode,
                    corners_around(b, vid, None),
                    covered,
                    a.width.to_degrees(),
                    frame.point(b.verts[vid].p),
                ));
            }
        }
        out.push(AnchorFilling {
            placements: layer.iter().map(|g| frame.placement(g)).collect(),
            word,
            dead_spots: dead,
        });
        Ok(Flow::Continue)
    })?;
    Ok(out)
}

/// Placements the search would try next on `patch` (at its canonical
/// anchor); empty when nothing is left open.
pub fn candidate_placements(patch: &Patch, reflections: bool) -> Result<Vec<Placement>, CoronaError> {
    let all: Vec<Placement> = patch.placements().copied().collect();
    let (frame, local) = Frame::new(&all)?;
    let mut board = Board::new(&patch.pentagon, patch.mode, &local[..patch.kernel.len()])?;
    let allow_t = patch.mode == PlacementModel::EecPlusCollinear;
    for g in &local[patch.kernel.len()..] {
        board.commit(*g, allow_t);
    }
    let Some((vid, arc)) = board.anchor() else {
        return Ok(Vec::new());
    };
    Ok(board
        .candidates(vid, &arc, reflections)
        .into_iter()
        .filter(|g| board.fits(&board.tile_from_pose(*g)))
        .map(|g| frame.placement(&g))
        .collect())
}

#[cfg(test)]
mod tests;
