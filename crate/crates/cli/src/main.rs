use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use pentaheesch::catalog::{Catalog, Params};
use pentaheesch::corona::{
    census, find_cluster_surrounded_once, heesch_bound, surround, CoronaError, HeeschReport, Patch, Placement,
    PlacementModel, SearchConfig,
};
use pentaheesch::render::render_svg;
use pentaheesch::solver::{pentagon_json, solve_category, Pentagon, SolveError};
use pentaheesch::spots::{spots_csv, verify_remarks};
use pentaheesch::verify::{verify_with, VerifyOptions, TABLE_TOL_DEG};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            Self::Verification(_) => 1,
            Self::Input(_) => 2,
            Self::Budget(_) => 3,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        Self::Input(e.to_string())
    }
}

impl From<CoronaError> for CliError {
    fn from(e: CoronaError) -> Self {
        match e {
            CoronaError::BudgetExceeded { .. } => Self::Budget(e.to_string()),
            other => Self::Input(other.to_string()),
        }
    }
}

/// Convex pentagons with Heesch number one: construction, spot analysis and
/// corona search.
#[derive(Parser, Debug)]
#[command(name = "pentaheesch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Instance {
    /// Category number, 1 to 17.
    category: u32,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
}

impl Instance {
    fn params(&self) -> Params {
        Params {
            m: self.m,
            n: self.n,
        }
    }

    fn solve(&self) -> Result<Pentagon, CliError> {
        Ok(solve_category(self.category, self.params())?.0)
    }
}

#[derive(Args, Debug)]
struct Search {
    /// Placement model: eec or eec+collinear.
    #[arg(long, default_value = "eec")]
    mode: PlacementModel,
    /// Layer limit.
    #[arg(long, default_value_t = 3)]
    layers: usize,
    /// Node budget for the search.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Forbid mirror-image copies.
    #[arg(long)]
    no_reflections: bool,
}

impl Search {
    fn config(&self) -> Result<SearchConfig, CliError> {
        if self.layers == 0 {
            return Err(CliError::Input("--layers must be at least 1".into()));
        }
        Ok(SearchConfig {
            mode: self.mode,
            layer_limit: self.layers,
            budget: self.budget,
            reflections: !self.no_reflections,
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a category instance and print its angles.
    Solve {
        #[command(flatten)]
        instance: Instance,
        /// Where to write the pentagon JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allowed deviation from the printed table row, degrees.
        #[arg(long, default_value_t = TABLE_TOL_DEG)]
        tolerance: f64,
    },
    /// Classify the spots of an instance and compare with the reference labels.
    Spots {
        #[command(flatten)]
        instance: Instance,
        /// Where to write the CSV (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Surround a single tile once (or list every first corona).
    Corona {
        #[command(flatten)]
        instance: Instance,
        #[command(flatten)]
        search: Search,
        /// List all distinct first coronas instead of the first one found.
        #[arg(long)]
        census: bool,
        /// Where to write the patch JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Heesch-number bound for a single tile.
    Heesch {
        #[command(flatten)]
        instance: Instance,
        #[command(flatten)]
        search: Search,
        /// Where to write the report JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a cluster that can be surrounded once but not twice.
    Cluster {
        #[command(flatten)]
        instance: Instance,
        #[command(flatten)]
        search: Search,
        /// Tiles in the cluster.
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a patch JSON file as SVG.
    Render {
        patch: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Export the category definitions and reference rows as JSON.
    Catalog {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full regression and write a pass/fail matrix.
    VerifyAll {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allowed deviation from printed angles, degrees.
        #[arg(long, default_value_t = TABLE_TOL_DEG)]
        tolerance: f64,
        #[arg(long)]
        budget: Option<u64>,
    },
}

/// Two decimals with trailing zeros dropped, as in the reference tables.
fn fmt_angle(x: f64) -> String {
    let s = format!("{x:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn write_out(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}

fn check_tolerance(t: f64) -> Result<(), CliError> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(CliError::Input("--tolerance must be positive".into()))
    }
}

fn summary(r: &HeeschReport) -> String {
    let mut s = format!(
        "layers completed: {} (limit {})\nstatus: {}\nplacement model: {}\n",
        r.layers_completed,
        r.layer_limit,
        serde_json::to_value(r.status).unwrap().as_str().unwrap_or_default(),
        r.placement_model
    );
    if let Some(c) = &r.certificate {
        let corners: String = c.corners.iter().map(|c| c.as_char()).collect();
        s += &format!(
            "dead spot: corners {} at ({:.6}, {:.6}), open angle {}° not a sum of corners ({} combinations checked)\n",
            corners,
            c.point[0],
            c.point[1],
            fmt_angle(c.gap_deg),
            c.combinations_checked
        );
    }
    s += &format!("nodes: {}, coronas examined: {}\n", r.nodes, r.coronas_examined);
    s += &format!("caveat: {}\n", r.caveat);
    s
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve {
            instance,
            out,
            tolerance,
        } => {
            check_tolerance(tolerance)?;
            let (p, trace) = solve_category(instance.category, instance.params())?;
            let angles = p.angles_deg();
            println!("{}", angles.map(fmt_angle).join(", "));
            if let Some(path) = out {
                write_out(&path, &pretty(&pentagon_json(&p, &trace)))?;
            }
            if let Some(row) = Catalog::standard().row(instance.category, instance.params()) {
                let dev = angles
                    .iter()
                    .zip(&row.angles_deg)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                if dev > tolerance {
                    return Err(CliError::Verification(format!(
                        "solved angles differ from the table by {dev:.4}°"
                    )));
                }
            }
        }
        Command::Spots { instance, out } => {
            let report = verify_remarks(instance.category, instance.params())?;
            let csv = spots_csv(&report.spots);
            match out {
                Some(path) => write_out(&path, &csv)?,
                None => print!("{csv}"),
            }
            eprintln!(
                "matched {} remark spot(s); {} spot(s) not listed in the remarks; {} contradiction(s)",
                report.matched.len(),
                report.unlisted.len(),
                report.contradicting.len()
            );
            for c in &report.contradicting {
                eprintln!(
                    "contradiction: {} reference {} engine {}",
                    c.spot,
                    c.reference,
                    c.engine.map_or("none".into(), |e| e.to_string())
                );
            }
            for a in &report.arrangements {
                if a.witness.is_none() {
                    eprintln!("arrangement {} at {} not realizable", a.word, a.corner);
                }
            }
            if !report.ok() {
                return Err(CliError::Verification("spot labels disagree with the remarks".into()));
            }
        }
        Command::Corona {
            instance,
            search,
            census: all,
            out,
        } => {
            let p = instance.solve()?;
            let cfg = search.config()?;
            let kernel = [Placement::identity()];
            if all {
                let patches = census(&p, &kernel, &cfg)?;
                let t = patches.iter().filter(|c| c.has_t_junction()).count();
                println!("{} distinct first corona(s), {} with non-edge-to-edge contacts", patches.len(), t);
                if let Some(path) = out {
                    let v: Vec<_> = patches.iter().map(Patch::to_json).collect();
                    write_out(&path, &pretty(&serde_json::Value::Array(v)))?;
                }
            } else {
                let (report, patch) = surround(&p, &kernel, &cfg)?;
                print!("{}", summary(&report));
                if let (Some(path), Some(patch)) = (out, patch) {
                    write_out(&path, &pretty(&patch.to_json()))?;
                }
            }
        }
        Command::Heesch { instance, search, out } => {
            let p = instance.solve()?;
            let report = heesch_bound(&p, &search.config()?)?;
            print!("{}", summary(&report));
            if let Some(path) = out {
                write_out(&path, &pretty(&report.to_json()))?;
            }
        }
        Command::Cluster {
            instance,
            search,
            size,
            out,
        } => {
            if size == 0 {
                return Err(CliError::Input("--size must be at least 1".into()));
            }
            let p = instance.solve()?;
            match find_cluster_surrounded_once(&p, size, &search.config()?)? {
                Some(c) => {
                    println!(
                        "cluster #{} (of {} tried) is surrounded once but not twice",
                        c.index, c.clusters_tried
                    );
                    print!("{}", summary(&c.report));
                    if let Some(path) = out {
                        write_out(&path, &pretty(&serde_json::to_value(&c).unwrap()))?;
                    }
                }
                None => {
                    return Err(CliError::Verification(format!(
                        "no {size}-tile cluster is surrounded exactly once"
                    )))
                }
            }
        }
        Command::Render { patch, out } => {
            let text = fs::read_to_string(&patch)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", patch.display())))?;
            let patch = Patch::from_json(&text).map_err(|e| CliError::Input(format!("malformed patch: {e}")))?;
            let svg = render_svg(&patch).map_err(|e| CliError::Input(format!("malformed patch: {e}")))?;
            write_out(&out, &svg)?;
        }
        Command::Catalog { out } => {
            let text = pretty(&Catalog::standard().to_json());
            match out {
                Some(path) => write_out(&path, &text)?,
                None => print!("{text}"),
            }
        }
        Command::VerifyAll {
            out,
            tolerance,
            budget,
        } => {
            check_tolerance(tolerance)?;
            let mut opts = VerifyOptions {
                table_tol_deg: tolerance,
                ..Default::default()
            };
            if let Some(b) = budget {
                opts.search.budget = b;
            }
            let report = verify_with(&Catalog::standard(), &opts);
            for c in &report.checks {
                println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.group, c.name);
            }
            if let Some(path) = out {
                write_out(&path, &pretty(&report.to_json()))?;
            }
            let failed = report.failures().count();
            if failed > 0 {
                let names: Vec<String> = report.failures().map(|c| format!("{}: {}", c.group, c.name)).collect();
                return Err(CliError::Verification(format!("{failed} check(s) failed: {}", names.join("; "))));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fmt_angle;

    #[test]
    fn angles_like_the_tables() {
        assert_eq!(fmt_angle(90.0), "90");
        assert_eq!(fmt_angle(129.1299), "129.13");
        assert_eq!(fmt_angle(101.7400001), "101.74");
        assert_eq!(fmt_angle(36.3), "36.3");
        assert_eq!(fmt_angle(-0.001), "0");
    }
}
