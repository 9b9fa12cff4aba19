//! Full regression against the reference data: table rows, closed forms,
//! family generators, spot labels, Heesch bounds, the Type 7 sweep, the
//! Category 1 corona argument and the cluster surrounds.
//!
//! Everything takes a [`Catalog`] so that faults can be injected into a copy
//! of the reference data.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::catalog::{get_category_unchecked, Catalog, CornerLabel, HeeschNumber, Params};
use crate::corona::{
    anchor_fillings, census, dead_spots_of, find_cluster_surrounded_once, heesch_bound, HeeschStatus, Placement,
    PlacementModel, SearchConfig,
};
use crate::solver::{category1_lambda, family_parameter, sigma_deg, solve_category, type7_uniqueness_check};
use crate::spots::{brute_force_spots, default_max_corners, enumerate_spots, verify_remarks_with};

/// Largest deviation from a printed angle, degrees.
pub const TABLE_TOL_DEG: f64 = 0.01;
/// Printed λ, radians.
pub const LAMBDA_RAD: f64 = 0.4125742;
/// Printed σ, degrees.
pub const SIGMA_DEG: f64 = 51.3317;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub group: String,
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub all_pass: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn group(&self, group: &str) -> impl Iterator<Item = &Check> + '_ {
        let g = group.to_string();
        self.checks.iter().filter(move |c| c.group == g)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serialises")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Search settings for the Heesch and cluster checks (EEC only).
    pub search: SearchConfig,
    /// Allowed deviation from printed angles, degrees.
    pub table_tol_deg: f64,
    pub heesch: bool,
    pub clusters: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            search: SearchConfig {
                layer_limit: 2,
                ..Default::default()
            },
            table_tol_deg: TABLE_TOL_DEG,
            heesch: true,
            clusters: true,
        }
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, group: &str, name: impl Into<String>, pass: bool, detail: Value) {
        self.0.push(Check {
            group: group.into(),
            name: name.into(),
            pass,
            detail,
        });
    }
}

fn instance_name(id: u32, params: Params) -> String {
    if params.is_empty() {
        format!("category {id}")
    } else {
        format!("category {id} {params}")
    }
}

fn max_dev(a: &[f64; 5], b: &[f64; 5]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn tables(cat: &Catalog, tol: f64, out: &mut Checks) {
    for row in &cat.rows {
        let name = instance_name(row.category, row.params);
        match solve_category(row.category, row.params) {
            Ok((p, _)) => {
                let solved = p.angles_deg();
                let dev = max_dev(&solved, &row.angles_deg);
                let printed_sum: f64 = row.angles_deg.iter().sum();
                let spec = get_category_unchecked(row.category, row.params).expect("row category exists");
                let rel = spec
                    .all_relations()
                    .map(|r| r.residual_deg(&row.angles_deg).abs())
                    .fold(0.0, f64::max);
                let pass = dev <= tol && (printed_sum - 540.0).abs() <= 0.03 && rel <= 0.05;
                out.push(
                    "tables",
                    name,
                    pass,
                    json!({"solved": solved, "printed": row.angles_deg, "max_dev_deg": dev, "printed_relation_residual_deg": rel}),
                );
            }
            Err(e) => out.push("tables", name, false, json!({"error": e.to_string()})),
        }
    }
}

fn anchors(out: &mut Checks) {
    let s = sigma_deg();
    let exact = ((-1.0 + 17f64.sqrt()) / 4.0).asin().to_degrees();
    out.push(
        "anchors",
        "sigma",
        (s - exact).abs() <= 1e-9 && (s - SIGMA_DEG).abs() <= 5e-5,
        json!({"sigma_deg": s}),
    );
    match category1_lambda() {
        Ok((l, eps, _)) => out.push(
            "anchors",
            "lambda",
            (l - LAMBDA_RAD).abs() <= 1e-6,
            json!({"lambda_rad": l, "epsilon_rad": eps}),
        ),
        Err(e) => out.push("anchors", "lambda", false, json!({"error": e.to_string()})),
    }
}

fn families(cat: &Catalog, tol: f64, out: &mut Checks) {
    for row in cat.rows.iter().filter(|r| r.category == 3 || r.category == 4) {
        let name = instance_name(row.category, row.params);
        match family_parameter(row.category, row.params) {
            Ok(fp) => {
                let dev = max_dev(&fp.angles_deg, &row.angles_deg);
                out.push(
                    "families",
                    name,
                    dev <= tol,
                    json!({"parameter": fp.name, "value_deg": fp.value_deg, "max_dev_deg": dev}),
                );
            }
            Err(e) => out.push("families", name, false, json!({"error": e.to_string()})),
        }
    }
    let mus: Vec<Option<f64>> = (1..=20)
        .map(|n| family_parameter(3, Params::n(n)).ok().map(|f| f.value_deg))
        .collect();
    let increasing = mus.iter().all(Option::is_some)
        && mus.windows(2).all(|w| w[0] < w[1])
        && mus.iter().flatten().all(|&m| m < 90.0);
    out.push("families", "mu increasing towards 90", increasing, json!({"mu_deg": mus}));
}

fn spots(cat: &Catalog, out: &mut Checks) {
    for e in &cat.remarks {
        let name = instance_name(e.category, e.params);
        let report = match verify_remarks_with(cat, e.category, e.params) {
            Ok(r) => r,
            Err(err) => {
                out.push("spots", name, false, json!({"error": err.to_string()}));
                continue;
            }
        };
        let (p, _) = solve_category(e.category, e.params).expect("solved above");
        let max = default_max_corners(&p);
        let listed: Vec<_> = enumerate_spots(&p, max).iter().map(|s| s.multiset).collect();
        let oracle = brute_force_spots(&p, max, 360.0);
        let unrealized: Vec<&str> = report
            .arrangements
            .iter()
            .filter(|a| a.witness.is_none())
            .map(|a| a.word.as_str())
            .collect();
        out.push(
            "spots",
            name,
            report.ok() && listed == oracle,
            json!({
                "matched": report.matched.len(),
                "contradicting": report.contradicting,
                "unrealized_words": unrealized,
                "enumeration_matches_oracle": listed == oracle,
                "spots": listed.len(),
            }),
        );
    }
}

fn heesch(cat: &Catalog, search: &SearchConfig, out: &mut Checks) {
    for row in &cat.rows {
        let name = instance_name(row.category, row.params);
        let p = match solve_category(row.category, row.params) {
            Ok((p, _)) => p,
            Err(e) => {
                out.push("heesch", name, false, json!({"error": e.to_string()}));
                continue;
            }
        };
        let cfg = SearchConfig {
            mode: PlacementModel::EecOnly,
            ..*search
        };
        match heesch_bound(&p, &cfg) {
            Ok(r) => {
                let pass = match row.expected_heesch {
                    HeeschNumber::Finite(1) => {
                        r.layers_completed == 1
                            && matches!(r.status, HeeschStatus::DeadSpotCertificate | HeeschStatus::SearchExhausted)
                            && (r.status != HeeschStatus::DeadSpotCertificate || r.certificate.is_some())
                    }
                    HeeschNumber::Finite(h) => r.layers_completed == h as usize,
                    HeeschNumber::Infinite => r.layers_completed >= cfg.layer_limit.min(2),
                };
                out.push(
                    "heesch",
                    name,
                    pass,
                    json!({
                        "expected": row.expected_heesch.to_string(),
                        "layers_completed": r.layers_completed,
                        "status": r.status,
                        "certificate": r.certificate,
                        "nodes": r.nodes,
                        "coronas_examined": r.coronas_examined,
                        "placement_model": r.placement_model,
                    }),
                );
            }
            Err(e) => out.push("heesch", name, false, json!({"error": e.to_string()})),
        }
    }
}

fn type7(out: &mut Checks) {
    let r = type7_uniqueness_check();
    out.push(
        "type7",
        "n = 2 only",
        r.only_n2 && r.n1_fails && r.n3_fails,
        json!({"samples": r.samples.len(), "only_n2": r.only_n2, "n1_fails": r.n1_fails, "n3_fails": r.n3_fails}),
    );
}

/// Category 1: two ways to close corner D, four edge-to-edge first coronas,
/// at least six with collinear contacts, and a dead 2E point on every one.
fn category_one(search: &SearchConfig, out: &mut Checks) {
    let Ok((p, _)) = solve_category(1, Params::NONE) else {
        out.push("category1", "solve", false, json!(null));
        return;
    };
    let eec = SearchConfig {
        mode: PlacementModel::EecOnly,
        ..*search
    };
    let col = SearchConfig {
        mode: PlacementModel::EecPlusCollinear,
        ..*search
    };
    match anchor_fillings(&p, CornerLabel::D, &eec) {
        Ok(f) => out.push(
            "category1",
            "vertex D patterns",
            f.len() == 2,
            json!({"patterns": f.iter().map(|x| &x.word).collect::<Vec<_>>(), "dead": f.iter().map(|x| x.dead_spots.len()).collect::<Vec<_>>()}),
        ),
        Err(e) => out.push("category1", "vertex D patterns", false, json!({"error": e.to_string()})),
    }
    let e = p.angles_deg()[4];
    let kernel = [Placement::identity()];
    for (label, cfg) in [("edge-to-edge census", eec), ("collinear census", col)] {
        match census(&p, &kernel, &cfg) {
            Ok(c) => {
                let t = c.iter().filter(|x| x.has_t_junction()).count();
                let all_dead = c.iter().all(|x| {
                    dead_spots_of(x).is_ok_and(|d| {
                        d.iter()
                            .any(|s| s.corners == [CornerLabel::E, CornerLabel::E] && (s.gap_deg - (360.0 - 2.0 * e)).abs() < 1e-6)
                    })
                });
                let count_ok = match cfg.mode {
                    PlacementModel::EecOnly => c.len() == 4 && t == 0,
                    PlacementModel::EecPlusCollinear => c.len() >= 6 && t > 0,
                };
                out.push(
                    "category1",
                    label,
                    count_ok && all_dead,
                    json!({"coronas": c.len(), "non_edge_to_edge": t, "dead_2e_everywhere": all_dead}),
                );
            }
            Err(err) => out.push("category1", label, false, json!({"error": err.to_string()})),
        }
    }
}

/// Instances used for the cluster surrounds: the first row of each of
/// Categories 8–11 whose tile has Heesch number one.
pub fn cluster_instances(cat: &Catalog) -> Vec<(u32, Params)> {
    (8..=11)
        .filter_map(|id| {
            cat.rows
                .iter()
                .find(|r| r.category == id && r.expected_heesch == HeeschNumber::Finite(1))
                .map(|r| (id, r.params))
        })
        .collect()
}

fn clusters(cat: &Catalog, search: &SearchConfig, out: &mut Checks) {
    for (id, params) in cluster_instances(cat) {
        let name = instance_name(id, params);
        let Ok((p, _)) = solve_category(id, params) else {
            out.push("clusters", name, false, json!(null));
            continue;
        };
        let cfg = SearchConfig {
            mode: PlacementModel::EecOnly,
            ..*search
        };
        match find_cluster_surrounded_once(&p, 3, &cfg) {
            Ok(Some(c)) => out.push(
                "clusters",
                name,
                c.report.layers_completed == 1,
                json!({"cluster": c.cluster, "index": c.index, "clusters_tried": c.clusters_tried, "status": c.report.status}),
            ),
            Ok(None) => out.push("clusters", name, false, json!({"cluster": null})),
            Err(e) => out.push("clusters", name, false, json!({"error": e.to_string()})),
        }
    }
}

/// Runs every check with the default options.
pub fn verify_all(cat: &Catalog) -> VerifyReport {
    verify_with(cat, &VerifyOptions::default())
}

pub fn verify_with(cat: &Catalog, opts: &VerifyOptions) -> VerifyReport {
    let mut out = Checks(Vec::new());
    tables(cat, opts.table_tol_deg, &mut out);
    anchors(&mut out);
    families(cat, opts.table_tol_deg, &mut out);
    spots(cat, &mut out);
    type7(&mut out);
    category_one(&opts.search, &mut out);
    if opts.heesch {
        heesch(cat, &opts.search, &mut out);
    }
    if opts.clusters {
        clusters(cat, &opts.search, &mut out);
    }
    let checks = out.0;
    VerifyReport {
        all_pass: checks.iter().all(|c| c.pass),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Multiset, SpotClass};

    fn quick() -> VerifyOptions {
        VerifyOptions {
            heesch: false,
            clusters: false,
            ..Default::default()
        }
    }

    #[test]
    fn standard_catalog_passes() {
        let r = verify_with(&Catalog::standard(), &quick());
        let bad: Vec<_> = r.failures().collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn perturbed_table_row_fails() {
        let mut cat = Catalog::standard();
        cat.row_mut(2, Params::NONE).unwrap().angles_deg[0] += 0.1;
        let r = verify_with(&cat, &quick());
        let bad: Vec<_> = r.failures().map(|c| (c.group.as_str(), c.name.as_str())).collect();
        assert_eq!(bad, [("tables", "category 2")]);
    }

    #[test]
    fn relabelled_spot_fails() {
        let mut cat = Catalog::standard();
        let spots = cat.remarks_mut(8, Params::n(1)).unwrap();
        let target: Multiset = "3B+D".parse().unwrap();
        let s = spots.iter_mut().find(|s| s.spot == target).unwrap();
        assert_eq!(s.class, SpotClass::Neec);
        s.class = SpotClass::Eec;
        let r = verify_with(&cat, &quick());
        let bad: Vec<_> = r.failures().map(|c| (c.group.as_str(), c.name.as_str())).collect();
        assert_eq!(bad, [("spots", "category 8 n=1")]);
    }

    #[test]
    fn cluster_rows_skip_tiling_members() {
        let rows = cluster_instances(&Catalog::standard());
        assert_eq!(
            rows,
            [(8, Params::n(1)), (9, Params::NONE), (10, Params::NONE), (11, Params::n(2))]
        );
    }
}
