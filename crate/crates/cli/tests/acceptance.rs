//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use pentaheesch::catalog::{instances, reference_rows, Catalog, CornerLabel, HeeschNumber, Params};
use pentaheesch::combos::brute_force_witness;
use pentaheesch::corona::{
    anchor_fillings, census, dead_spots_of, find_cluster_surrounded_once, heesch_bound, validate_patch,
    HeeschReport, HeeschStatus, Patch, Placement, PlacementModel, SearchConfig,
};
use pentaheesch::solver::{category1_lambda, family_parameter, sigma_deg, solve_category, type7_uniqueness_check};
use pentaheesch::spots::{brute_force_spots, default_max_corners, enumerate_spots, verify_remarks};
use pentaheesch::verify::cluster_instances;

const SUBSET_SUM_TOL: f64 = 1e-6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn max_dev(a: &[f64; 5], b: &[f64; 5]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn name(id: u32, params: Params) -> String {
    if params.is_empty() {
        id.to_string()
    } else {
        format!("{id} {params}")
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn table_reproduction() -> Outcome {
    let t = Instant::now();
    let rows = reference_rows();
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for r in &rows {
        match solve_category(r.category, r.params) {
            Ok((p, _)) => {
                let d = max_dev(&p.angles_deg(), &r.angles_deg);
                worst = worst.max(d);
                if d > 0.01 {
                    bad.push(name(r.category, r.params));
                }
            }
            Err(e) => bad.push(format!("{}: {e}", name(r.category, r.params))),
        }
    }
    let el = t.elapsed();
    outcome(
        bad.is_empty() && rows.len() >= 35 && el < Duration::from_secs(5),
        format!("{} rows, worst deviation {worst:.5}°, {} failing {:?}, {}", rows.len(), bad.len(), bad, secs(el)),
    )
}

fn closed_form_anchors() -> Outcome {
    let s = sigma_deg();
    let exact = ((-1.0 + 17f64.sqrt()) / 4.0).asin().to_degrees();
    let sigma_ok = (s - exact).abs() <= 1e-9 && (s - 51.3317).abs() < 5e-5;
    let (lambda, lambda_ok) = match category1_lambda() {
        Ok((l, _, _)) => (l, (l - 0.4125742).abs() <= 1e-6),
        Err(_) => (f64::NAN, false),
    };
    outcome(sigma_ok && lambda_ok, format!("sigma = {s:.7}°, lambda = {lambda:.9} rad"))
}

fn family_generators() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    let mut ok = true;
    for r in reference_rows().iter().filter(|r| r.category == 3 || r.category == 4) {
        match family_parameter(r.category, r.params) {
            Ok(f) => {
                let d = max_dev(&f.angles_deg, &r.angles_deg);
                worst = worst.max(d);
                ok &= d <= 0.01;
            }
            Err(_) => ok = false,
        }
        count += 1;
    }
    let mus: Vec<f64> = (1..=20)
        .filter_map(|n| family_parameter(3, Params::n(n)).ok().map(|f| f.value_deg))
        .collect();
    let monotone = mus.len() == 20 && mus.windows(2).all(|w| w[0] < w[1]) && mus.iter().all(|&m| m < 90.0);
    outcome(
        ok && count == 16 && monotone,
        format!(
            "{count} family rows, worst deviation {worst:.5}°; mu(1..20) increasing from {:.4}° to {:.4}°",
            mus.first().copied().unwrap_or(f64::NAN),
            mus.last().copied().unwrap_or(f64::NAN)
        ),
    )
}

fn spot_oracle() -> Outcome {
    let t = Instant::now();
    let mut mismatched = Vec::new();
    let mut contradictions = 0;
    let mut unrealized = 0;
    let mut labels = 0;
    let mut words = 0;
    for (id, params) in instances() {
        let (p, _) = solve_category(id, params).expect("catalog instances solve");
        let max = default_max_corners(&p);
        let got: Vec<_> = enumerate_spots(&p, max).iter().map(|s| s.multiset).collect();
        if got != brute_force_spots(&p, max, 360.0) {
            mismatched.push(name(id, params));
        }
        let r = verify_remarks(id, params).expect("catalog instances solve");
        labels += r.matched.len() + r.contradicting.len();
        contradictions += r.contradicting.len();
        words += r.arrangements.len();
        unrealized += r.arrangements.iter().filter(|a| a.witness.is_none()).count();
    }
    let el = t.elapsed();
    outcome(
        mismatched.is_empty() && contradictions == 0 && unrealized == 0 && el < Duration::from_secs(30),
        format!(
            "oracle mismatches {mismatched:?}; {labels} remark labels, {contradictions} contradictions; {words} table words, {unrealized} unrealizable; {}",
            secs(el)
        ),
    )
}

/// The certificate's gap really is no sum of corners.
fn certificate_sound(p: &pentaheesch::solver::Pentagon, r: &HeeschReport) -> bool {
    let Some(c) = &r.certificate else { return false };
    let a = p.angles_deg();
    let plain = brute_force_witness(&a, c.gap_deg, SUBSET_SUM_TOL).0.is_none();
    let straight = !c.straight_allowed
        || c.gap_deg < 180.0 - SUBSET_SUM_TOL
        || brute_force_witness(&a, c.gap_deg - 180.0, SUBSET_SUM_TOL).0.is_none();
    plain && straight
}

fn heesch_discrimination(patches: &mut Vec<Patch>) -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    let (mut certified, mut exhausted, mut types) = (0, 0, 0);
    for row in reference_rows() {
        let (p, _) = solve_category(row.category, row.params).expect("catalog instances solve");
        let label = name(row.category, row.params);
        let cfg = match row.expected_heesch {
            HeeschNumber::Infinite => SearchConfig {
                layer_limit: 2,
                ..Default::default()
            },
            _ => SearchConfig::default(),
        };
        match heesch_bound(&p, &cfg) {
            Ok(r) => {
                let ok = match row.expected_heesch {
                    HeeschNumber::Infinite => {
                        types += 1;
                        r.layers_completed >= 2
                    }
                    _ => {
                        r.layers_completed == 1
                            && match r.status {
                                HeeschStatus::DeadSpotCertificate => {
                                    certified += 1;
                                    certificate_sound(&p, &r)
                                }
                                HeeschStatus::SearchExhausted => {
                                    exhausted += 1;
                                    true
                                }
                                _ => false,
                            }
                    }
                };
                if !ok {
                    bad.push(format!("{label}: {} layers, {:?}", r.layers_completed, r.status));
                }
                patches.extend(r.patch.filter(|x| !x.layers.is_empty()));
            }
            Err(e) => bad.push(format!("{label}: {e}")),
        }
    }
    let el = t.elapsed();
    outcome(
        bad.is_empty() && types == 4 && el < Duration::from_secs(600),
        format!(
            "H=1: {certified} dead-spot certificates, {exhausted} exhausted; {types} tiling tiles reach 2 layers; failures {bad:?}; {}",
            secs(el)
        ),
    )
}

/// Collinear mode is reported, not judged: it is a bound under a restricted
/// placement model.
fn collinear_report() -> String {
    let mut two = Vec::new();
    let mut budget = Vec::new();
    let mut one = 0;
    for row in reference_rows().iter().filter(|r| r.expected_heesch == HeeschNumber::Finite(1)) {
        let (p, _) = solve_category(row.category, row.params).expect("catalog instances solve");
        let cfg = SearchConfig {
            mode: PlacementModel::EecPlusCollinear,
            layer_limit: 2,
            budget: 200_000,
            ..Default::default()
        };
        let label = name(row.category, row.params);
        match heesch_bound(&p, &cfg) {
            Ok(r) if r.layers_completed >= 2 => two.push(label),
            Ok(_) => one += 1,
            Err(_) => budget.push(label),
        }
    }
    format!("collinear mode (budget 2e5): {one} stop at 1 layer, reach 2 layers: {two:?}, over budget: {budget:?}")
}

fn category_one_argument(patches: &mut Vec<Patch>) -> Outcome {
    let (p, _) = solve_category(1, Params::NONE).expect("category 1 solves");
    let e = p.angles_deg()[4];
    let eec = SearchConfig::default();
    let col = SearchConfig {
        mode: PlacementModel::EecPlusCollinear,
        ..Default::default()
    };
    let fillings = anchor_fillings(&p, CornerLabel::D, &eec).map(|f| f.len()).unwrap_or(0);
    let kernel = [Placement::identity()];
    let a = census(&p, &kernel, &eec).unwrap_or_default();
    let b = census(&p, &kernel, &col).unwrap_or_default();
    let non_eec = b.iter().filter(|c| c.has_t_junction()).count();
    let dead_2e = |c: &Patch| {
        dead_spots_of(c).is_ok_and(|d| {
            d.iter().any(|s| {
                s.corners == [CornerLabel::E, CornerLabel::E]
                    && (s.gap_deg - (360.0 - 2.0 * e)).abs() < 1e-6
                    && brute_force_witness(&p.angles_deg(), s.gap_deg, SUBSET_SUM_TOL).0.is_none()
            })
        })
    };
    let all_dead = a.iter().chain(&b).all(dead_2e);
    let pass = fillings == 2 && a.len() == 4 && b.len() >= 6 && non_eec > 0 && all_dead;
    let detail = format!(
        "vertex D: {fillings} patterns; {} edge-to-edge coronas; {} with collinear contacts ({non_eec} non-edge-to-edge); dead 2E gap {:.2}° on every corona: {all_dead}",
        a.len(),
        b.len(),
        360.0 - 2.0 * e
    );
    patches.extend(a);
    patches.extend(b);
    outcome(pass, detail)
}

fn type7() -> Outcome {
    let r = type7_uniqueness_check();
    outcome(
        r.only_n2 && r.n1_fails && r.n3_fails,
        format!(
            "{} (alpha, beta) samples; only n=2: {}; n=1 fails: {}; n=3 fails: {}",
            r.samples.len(),
            r.only_n2,
            r.n1_fails,
            r.n3_fails
        ),
    )
}

fn cluster_surrounds(patches: &mut Vec<Patch>) -> Outcome {
    let t = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    let rows = cluster_instances(&Catalog::standard());
    for (id, params) in &rows {
        let (p, _) = solve_category(*id, *params).expect("catalog instances solve");
        match find_cluster_surrounded_once(&p, 3, &SearchConfig::default()) {
            Ok(Some(c)) => {
                let valid = c.report.patch.as_ref().is_some_and(|x| validate_patch(x).ok());
                ok &= c.report.layers_completed == 1 && c.cluster.len() == 3 && valid;
                parts.push(format!("{}: cluster #{} ({:?})", name(*id, *params), c.index, c.report.status));
                patches.extend(c.report.patch);
            }
            other => {
                ok = false;
                parts.push(format!("{}: {:?}", name(*id, *params), other.map(|_| "none").map_err(|e| e.to_string())));
            }
        }
    }
    let el = t.elapsed();
    outcome(
        ok && rows.len() == 4 && el < Duration::from_secs(600),
        format!("{}; {}", parts.join("; "), secs(el)),
    )
}

fn perturb(patch: &Patch, rng: &mut StdRng) -> Patch {
    let mut out = patch.clone();
    let total = out.tile_count();
    let pick = rng.gen_range(0..total);
    let tile = if pick < out.kernel.len() {
        &mut out.kernel[pick]
    } else {
        let mut i = pick - out.kernel.len();
        let mut l = 0;
        while i >= out.layers[l].len() {
            i -= out.layers[l].len();
            l += 1;
        }
        &mut out.layers[l][i]
    };
    let scale = patch.pentagon.longest_edge();
    let size = 10f64.powf(rng.gen_range(-4.0..-1.0));
    match rng.gen_range(0..4) {
        0 => {
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            tile.x += size * scale * phi.cos();
            tile.y += size * scale * phi.sin();
        }
        1 => tile.theta_rad += if rng.gen() { size } else { -size },
        2 => {
            tile.x += size * scale * rng.gen_range(-1.0..1.0);
            tile.theta_rad += size * rng.gen_range(-1.0..1.0);
        }
        _ => tile.reflected = !tile.reflected,
    }
    out
}

fn fault_injection(patches: &[Patch]) -> Outcome {
    let false_positives = patches.iter().filter(|p| !validate_patch(p).ok()).count();
    let mut rng = StdRng::seed_from_u64(20_240_917);
    let cases = 10_000;
    let mut missed = 0;
    for _ in 0..cases {
        let p = &patches[rng.gen_range(0..patches.len())];
        if validate_patch(&perturb(p, &mut rng)).ok() {
            missed += 1;
        }
    }
    outcome(
        false_positives == 0 && missed == 0 && !patches.is_empty(),
        format!(
            "{} canonical patches, {false_positives} flagged; {cases} perturbed, {missed} undetected",
            patches.len()
        ),
    )
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("pentaheesch-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let run = |name: &str| {
        let path = dir.join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_pentaheesch"))
            .args(["verify-all", "--out"])
            .arg(&path)
            .output()
            .expect("binary runs")
            .status;
        (status.code(), std::fs::read(&path).unwrap_or_default())
    };
    let (c1, a) = run("first.json");
    let (c2, b) = run("second.json");
    let _ = std::fs::remove_dir_all(&dir);
    outcome(
        c1 == Some(0) && c2 == Some(0) && !a.is_empty() && a == b,
        format!("exit codes {c1:?}/{c2:?}; {} bytes; identical: {}", a.len(), a == b),
    )
}

fn main() {
    // `cargo test` passes harness flags such as `--list`; nothing to list here
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut patches = Vec::new();
    let mut failed = 0;
    let mut report = |n: u32, title: &str, o: Outcome| {
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {} {title}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    };
    report(1, "table reproduction", table_reproduction());
    report(2, "closed-form anchors", closed_form_anchors());
    report(3, "family generators", family_generators());
    report(4, "spot oracle and labels", spot_oracle());
    report(5, "Heesch discrimination", heesch_discrimination(&mut patches));
    println!("             {}", collinear_report());
    report(6, "Category 1 structure", category_one_argument(&mut patches));
    report(7, "Type 7 uniqueness", type7());
    report(8, "cluster surrounds", cluster_surrounds(&mut patches));
    report(9, "patch validity", fault_injection(&patches));
    report(10, "determinism", determinism());
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
