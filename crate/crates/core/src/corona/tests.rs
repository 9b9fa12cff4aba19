use super::*;
use crate::catalog::Params;
use crate::solver::solve_category;

fn pent(id: u32, params: Params) -> Pentagon {
    solve_category(id, params).unwrap().0
}

#[test]
fn regular_pentagon_has_no_corona() {
    let p = Pentagon::regular();
    let r = heesch_bound(&p, &SearchConfig::default()).unwrap();
    assert_eq!(r.layers_completed, 0);
    assert_eq!(r.status, HeeschStatus::NoFirstCorona);
}

#[test]
fn category_one_vertex_d_has_two_patterns() {
    let p = pent(1, Params::NONE);
    let f = anchor_fillings(&p, CornerLabel::D, &SearchConfig::default()).unwrap();
    assert_eq!(f.len(), 2);
    assert!(f.iter().all(|x| x.word == "DDA"));
    assert_eq!(f.iter().filter(|x| x.dead_spots.is_empty()).count(), 1);
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn category_one_census() {
    let p = pent(1, Params::NONE);
    let kernel = [Placement::identity()];
    let eec = census(&p, &kernel, &SearchConfig::default()).unwrap();
    assert_eq!(eec.len(), 4);
    assert!(eec.iter().all(|c| !c.has_t_junction()));
    let cfg = SearchConfig {
        mode: PlacementModel::EecPlusCollinear,
        ..Default::default()
    };
    let all = census(&p, &kernel, &cfg).unwrap();
    assert_eq!(all.len(), 10);
    assert_eq!(all.iter().filter(|c| c.has_t_junction()).count(), 6);
    for c in eec.iter().chain(&all) {
        let v = validate_patch(c);
        assert!(v.ok(), "{v:?}");
    }
}

#[test]
fn every_category_one_corona_has_a_dead_double_e() {
    let p = pent(1, Params::NONE);
    let e = p.angles_deg()[4];
    for mode in [PlacementModel::EecOnly, PlacementModel::EecPlusCollinear] {
        let cfg = SearchConfig {
            mode,
            ..Default::default()
        };
        for c in census(&p, &[Placement::identity()], &cfg).unwrap() {
            let dead = dead_spots_of(&c).unwrap();
            assert!(
                dead.iter().any(|d| d.corners == [CornerLabel::E, CornerLabel::E] && close(d.gap_deg, 360.0 - 2.0 * e, 1e-6)),
                "{dead:?}"
            );
        }
    }
}

#[test]
fn category_one_boundary_has_double_e_vertex() {
    let p = pent(1, Params::NONE);
    let c = &census(&p, &[Placement::identity()], &SearchConfig::default()).unwrap()[0];
    let b = c.boundary().unwrap();
    assert!(b
        .vertices
        .iter()
        .any(|v| close(v.gap.to_degrees(), 170.88, 0.01)));
}

#[test]
fn category_one_bound_is_certified() {
    let p = pent(1, Params::NONE);
    let r = heesch_bound(&p, &SearchConfig::default()).unwrap();
    assert_eq!(r.layers_completed, 1);
    assert_eq!(r.status, HeeschStatus::DeadSpotCertificate);
    let cert = r.certificate.unwrap();
    assert_eq!(cert.corners, [CornerLabel::E, CornerLabel::E]);
    assert!(close(cert.gap_deg, 170.88, 0.01));
    assert!(cert.combinations_checked > 0);
}

#[test]
fn category_nine_d_anchor_includes_triple_d() {
    let p = pent(9, Params::NONE);
    let f = anchor_fillings(&p, CornerLabel::D, &SearchConfig::default()).unwrap();
    assert!(f.iter().any(|x| x.word == "DDD"), "{:?}", f.iter().map(|x| &x.word).collect::<Vec<_>>());
}

#[test]
fn type_tile_reaches_two_layers() {
    let p = pent(3, Params::n(1));
    let cfg = SearchConfig {
        layer_limit: 2,
        ..Default::default()
    };
    let r = heesch_bound(&p, &cfg).unwrap();
    assert_eq!(r.layers_completed, 2);
    assert_eq!(r.status, HeeschStatus::LayerLimitReached);
    let patch = r.patch.unwrap();
    assert_eq!(patch.layers.len(), 2);
    assert!(validate_patch(&patch).ok());
}

#[test]
fn surround_yields_valid_patch() {
    let p = pent(6, Params::NONE);
    let (r, patch) = surround(&p, &[Placement::identity()], &SearchConfig::default()).unwrap();
    assert_eq!(r.status, HeeschStatus::SurroundedKTimes);
    let patch = patch.unwrap();
    assert_eq!(patch.layers.len(), 1);
    assert!(validate_patch(&patch).ok());
    // nothing left to place around the kernel
    assert!(candidate_placements(&patch, true).unwrap().is_empty());
    assert!(!candidate_placements(&Patch::single(&p, PlacementModel::EecOnly), true)
        .unwrap()
        .is_empty());
}

#[test]
fn budget_is_enforced() {
    let p = pent(1, Params::NONE);
    let cfg = SearchConfig {
        budget: 3,
        ..Default::default()
    };
    assert!(matches!(
        heesch_bound(&p, &cfg),
        Err(CoronaError::BudgetExceeded { budget: 3 })
    ));
}

#[test]
fn single_tile_cluster_matches_heesch_bound() {
    let p = pent(10, Params::NONE);
    let cfg = SearchConfig::default();
    let a = heesch_bound(&p, &cfg).unwrap();
    let b = surround_cluster(&p, &[Placement::identity()], &cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn moved_kernel_gives_congruent_result() {
    let p = pent(1, Params::NONE);
    let g = Pose::new(0.7, Point::new(3.0, -2.0), true);
    let moved = Placement::from_pose(&g);
    let cfg = SearchConfig::default();
    let a = heesch_bound(&p, &cfg).unwrap();
    let b = heesch_bound_kernel(&p, &[moved], &cfg).unwrap();
    assert_eq!(a.layers_completed, b.layers_completed);
    assert_eq!(a.status, b.status);
    let pa = a.patch.unwrap();
    let pb = b.patch.unwrap();
    assert_eq!(pa.tile_count(), pb.tile_count());
    for (x, y) in pa.placements().zip(pb.placements()) {
        let cx = x.corners(&p).map(|c| g.apply(c));
        let cy = y.corners(&p);
        for (u, v) in cx.iter().zip(&cy) {
            assert!(u.distance(*v) < 1e-9);
        }
    }
}

#[test]
fn validation_catches_faults() {
    let p = pent(1, Params::NONE);
    let c = census(&p, &[Placement::identity()], &SearchConfig::default())
        .unwrap()
        .remove(0);
    let mut dup = c.clone();
    let first = dup.layers[0][0];
    dup.layers[0].push(first);
    assert!(!validate_patch(&dup).overlaps.is_empty());

    let mut missing = c.clone();
    missing.layers[0].remove(0);
    assert!(!validate_patch(&missing).coverage.is_empty());
}

#[test]
fn json_round_trip() {
    let p = pent(1, Params::NONE);
    let r = heesch_bound(&p, &SearchConfig::default()).unwrap();
    let patch = r.patch.clone().unwrap();
    let back = Patch::from_json(&patch.to_json().to_string()).unwrap();
    assert_eq!(back, patch);
    let report: HeeschReport = serde_json::from_value(r.to_json()).unwrap();
    assert_eq!(report, r);
    assert_eq!(r.to_json()["status"], "DEAD_SPOT_CERTIFICATE");
}

#[test]
fn clusters_are_distinct_and_connected() {
    let p = pent(8, Params::n(1));
    let two = enumerate_clusters(&p, 2, true);
    assert!(!two.is_empty());
    assert!(two.iter().all(|c| c.len() == 2));
    let three = enumerate_clusters(&p, 3, true);
    for c in three.iter().take(20) {
        let patch = Patch {
            pentagon: p.clone(),
            kernel: c.clone(),
            layers: Vec::new(),
            mode: PlacementModel::EecOnly,
        };
        assert!(patch.boundary().is_ok());
    }
}
