use approx::assert_abs_diff_eq;

use pentaheesch::catalog::{Catalog, CornerLabel, Params, SpotClass};
use pentaheesch::corona::{heesch_bound, HeeschStatus, SearchConfig};
use pentaheesch::solver::{build_coordinates, solve_category};
use pentaheesch::spots::{classified_spots, verify_remarks};

#[test]
fn category_nine_is_mirror_symmetric() {
    let (p, _) = solve_category(9, Params::NONE).unwrap();
    for (got, want) in p.angles_deg().iter().zip([120.0, 120.0, 90.0, 120.0, 90.0]) {
        assert_abs_diff_eq!(*got, want, epsilon = 1e-9);
    }
    // reflect across the perpendicular bisector of AB
    let poly = build_coordinates(&p);
    let mid = p.edges[1] / 2.0;
    let v = poly.vertices();
    for i in 0..5 {
        let q = v[i];
        let mirrored = pentaheesch::Point::new(2.0 * mid - q.x, q.y);
        assert!(v.iter().any(|w| w.distance(mirrored) < 1e-9), "vertex {i}");
    }
}

#[test]
fn category_fifteen_corner_d_from_coordinates() {
    let (p, _) = solve_category(15, Params::NONE).unwrap();
    let poly = build_coordinates(&p);
    assert_abs_diff_eq!(poly.interior_angle(CornerLabel::D.index()).to_degrees(), 36.0, epsilon = 1e-9);
}

#[test]
fn category_sixteen_first_member() {
    let (p, _) = solve_category(16, Params::n(1)).unwrap();
    for (got, want) in p.angles_deg().iter().zip([112.5, 135.0, 90.0, 112.5, 90.0]) {
        assert_abs_diff_eq!(*got, want, epsilon = 1e-9);
    }
}

#[test]
fn spot_examples() {
    let (p, _) = solve_category(8, Params::n(1)).unwrap();
    let s = classified_spots(&p);
    let b3d = s.iter().find(|s| s.multiset.to_string() == "3B+D").unwrap();
    assert_eq!(b3d.classification, Some(SpotClass::Neec));

    let (p, _) = solve_category(16, Params::n(2)).unwrap();
    let s = classified_spots(&p);
    assert!(s
        .iter()
        .any(|s| s.multiset.to_string() == "6B" && s.classification == Some(SpotClass::Eec)));

    let r = verify_remarks(10, Params::NONE).unwrap();
    assert!(r.ok());
    assert!(r.matched.iter().any(|m| m.spot.to_string() == "4E+B+D" && m.class == SpotClass::Eec));
}

#[test]
fn category_twelve_second_member_has_one_layer() {
    let (p, _) = solve_category(12, Params::n(2)).unwrap();
    let r = heesch_bound(&p, &SearchConfig::default()).unwrap();
    assert_eq!(r.layers_completed, 1);
    assert_eq!(r.status, HeeschStatus::DeadSpotCertificate);
}

#[test]
fn catalog_export_covers_every_category() {
    let v = Catalog::standard().to_json();
    let cats = v.as_array().unwrap();
    assert_eq!(cats.len(), 17);
}
