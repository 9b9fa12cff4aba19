//! Small connected clusters used as kernels.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::geom::trace_boundary;
use crate::solver::Pentagon;
use crate::Pose;

use super::board::{pose_mapping, region_key, Board};
use super::{heesch_bound_kernel, CoronaError, HeeschReport, Placement, PlacementModel, SearchConfig};

/// Congruence-invariant key of a set of placed tiles.
fn cluster_key(p: &Pentagon, poses: &[Pose]) -> Vec<[(i64, i64); 5]> {
    let base = p.vertices();
    let scale = p.longest_edge();
    let mut best: Option<Vec<[(i64, i64); 5]>> = None;
    for g in poses {
        let inv = g.inverse();
        let mut v: Vec<_> = poses
            .iter()
            .map(|h| region_key(&base.map(|b| inv.apply(h.apply(b))), scale))
            .collect();
        v.sort_unstable();
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    best.unwrap_or_default()
}

/// Connected, hole-free edge-to-edge clusters of `size` tiles containing the
/// identity tile, distinct up to congruence, in a fixed generation order.
pub fn enumerate_clusters(p: &Pentagon, size: usize, reflections: bool) -> Vec<Vec<Placement>> {
    let mut out: Vec<Vec<Pose>> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut frontier: Vec<Vec<Pose>> = vec![vec![Pose::identity()]];
    let base = p.vertices();
    let tol = 1e-7 * p.longest_edge();
    let chiralities: &[bool] = if reflections { &[false, true] } else { &[false] };
    for _ in 1..size.max(1) {
        let mut next = Vec::new();
        for cluster in &frontier {
            let mut board = Board::new(p, PlacementModel::EecOnly, &[]).expect("empty board");
            for g in cluster {
                board.commit(*g, true);
            }
            for t in 0..cluster.len() {
                let corners = board.tiles[t].corners;
                let reflected = board.tiles[t].pose.reflected;
                for e in 0..5 {
                    // edge from corner e to e+1, walked counterclockwise
                    let (a, b) = if reflected {
                        (corners[(e + 1) % 5], corners[e])
                    } else {
                        (corners[e], corners[(e + 1) % 5])
                    };
                    for j in 0..5 {
                        let (pj, pk) = (base[j], base[(j + 1) % 5]);
                        if (pj.distance(pk) - a.distance(b)).abs() > tol {
                            continue;
                        }
                        for &refl in chiralities {
                            // the new tile walks the shared edge the other way
                            let g = if refl {
                                pose_mapping(pj, pk, a, b, true)
                            } else {
                                pose_mapping(pk, pj, a, b, false)
                            };
                            let tile = board.tile_from_pose(g);
                            if !board.fits(&tile) {
                                continue;
                            }
                            if board.commit(g, false).is_none() {
                                continue;
                            }
                            let simple = trace_boundary(&board.all_polygons()).is_ok();
                            board.pop();
                            if !simple {
                                continue;
                            }
                            let mut c = cluster.clone();
                            c.push(g);
                            if seen.insert(cluster_key(p, &c)) {
                                next.push(c);
                            }
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    out.append(&mut frontier);
    out.into_iter()
        .map(|c| c.iter().map(Placement::from_pose).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterResult {
    pub cluster: Vec<Placement>,
    /// Index in the generation order of [`enumerate_clusters`].
    pub index: usize,
    pub clusters_tried: usize,
    pub report: HeeschReport,
}

/// Heesch bound with a cluster as the kernel (layer limit from `cfg`).
pub fn surround_cluster(p: &Pentagon, cluster: &[Placement], cfg: &SearchConfig) -> Result<HeeschReport, CoronaError> {
    heesch_bound_kernel(p, cluster, cfg)
}

/// First cluster of `size` tiles (in generation order) that can be
/// surrounded once but not twice. Clusters whose search runs out of budget
/// are skipped.
pub fn find_cluster_surrounded_once(p: &Pentagon, size: usize, cfg: &SearchConfig) -> Result<Option<ClusterResult>, CoronaError> {
    let cfg = SearchConfig {
        layer_limit: 2,
        ..*cfg
    };
    let clusters = enumerate_clusters(p, size, cfg.reflections);
    for (i, c) in clusters.iter().enumerate() {
        let report = match surround_cluster(p, c, &cfg) {
            Ok(r) => r,
            Err(CoronaError::BudgetExceeded { .. }) => continue,
            Err(e) => return Err(e),
        };
        if report.layers_completed == 1 {
            return Ok(Some(ClusterResult {
                cluster: c.clone(),
                index: i,
                clusters_tried: i + 1,
                report,
            }));
        }
    }
    Ok(None)
}
