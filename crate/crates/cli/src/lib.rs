//! Command-line front end: parses arguments, runs one toolkit operation and
//! prints a deterministic JSON report.
//!
//! Exit status is 0 on success, 1 when the requested verification fails and
//! 2 on any input or usage error.

pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use stekcurv::{
    cd_check, check_green_identity, check_rigidity, classify_normalized, classify_partial,
    classify_unit_weight, complete_graph, construct_rigid_family, curvature_profile,
    disjoint_ball_scan, laplacian_spectrum, make_example, parse_graph_file, serialize_graph,
    steklov_spectrum, BoundaryGraph, Classification, Dimension, Error, ExampleFamily, Spectrum,
    VertexFunction, WeightedGraph,
};

use report::{num, nums, opt_num, Obj, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "stekcurv", version, about = "Curvature and Steklov rigidity on weighted graphs with boundary")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GraphArg {
    /// Graph file (JSON with `vertices`, `edges`, `boundary`).
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassArg {
    Unit,
    Normalized,
    Partial,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    UnitPath3,
    UnitSquare,
    UnitSquareDiag,
    WeightedPath3,
    WeightedSquare,
    CompleteInterior,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Laplacian spectrum of the whole graph.
    Spectrum(GraphArg),
    /// Steklov spectrum of the Dirichlet-to-Neumann map.
    Steklov(GraphArg),
    /// Curvature K(x, n) at every vertex over a list of dimensions.
    Curvature {
        #[command(flatten)]
        graph: GraphArg,
        /// Comma-separated dimensions, `inf` allowed.
        #[arg(long = "n", value_delimiter = ',', default_value = "inf")]
        n: Vec<Dimension>,
    },
    /// Test CD(K, n) at every vertex or at one.
    CdCheck {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long = "K", allow_negative_numbers = true)]
        k: f64,
        #[arg(long = "n")]
        n: Dimension,
        /// Restrict the test to this vertex id.
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Audit equality in the Steklov Lichnerowicz bound.
    Rigidity {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long = "K")]
        k: f64,
        #[arg(long = "n")]
        n: Dimension,
    },
    /// Match the graph against a rigid family.
    Classify {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long = "class", value_enum)]
        class: ClassArg,
        #[arg(long = "K")]
        k: Option<f64>,
        #[arg(long = "n")]
        n: Option<Dimension>,
    },
    /// Green's identity on random function pairs.
    GreenCheck {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a graph file for one of the example families.
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long = "n")]
        n: Option<Dimension>,
        #[arg(long = "K")]
        k: Option<f64>,
        #[arg(long)]
        m: Option<f64>,
        #[arg(long)]
        interior_size: Option<usize>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Look for two disjoint radius-2 balls in the interior.
    BallScan(GraphArg),
}

/// Failure modes that end the run with exit status 2.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String, std::io::Error),
    Toolkit(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Toolkit(e)
    }
}

impl Failure {
    fn to_value(&self) -> Value {
        let (kind, message) = match self {
            Failure::Usage(m) => ("Usage".to_string(), m.clone()),
            Failure::Io(path, e) => ("Io".to_string(), format!("{path}: {e}")),
            Failure::Toolkit(e) => {
                let debug = format!("{e:?}");
                let kind = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("").to_string();
                (kind, e.to_string())
            }
        };
        Obj::new().set("error", Obj::new().set("kind", kind).set("message", message)).into()
    }
}

type Outcome = Result<(Report, bool, String), Failure>;

/// Runs the CLI on `args` (including the program name) and returns the exit
/// status. The report goes to `out`, summaries and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_INPUT_ERROR
                }
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok((report, ok, summary)) => {
            let _ = out.write_all(report.render().as_bytes());
            let _ = writeln!(err, "{summary}");
            if ok {
                EXIT_OK
            } else {
                EXIT_VERIFICATION_FAILED
            }
        }
        Err(f) => {
            let mut text = String::new();
            report::write_value(&f.to_value(), 0, &mut text);
            let _ = writeln!(err, "{text}");
            EXIT_INPUT_ERROR
        }
    }
}

fn load(path: &Path) -> Result<BoundaryGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.display().to_string(), e))?;
    Ok(parse_graph_file(&text)?)
}

fn graph_inputs(report: &mut Report, path: &Path) {
    report.inputs.insert("graph", path.display().to_string());
}

fn by_id(g: &WeightedGraph, order: &[usize], values: &[f64]) -> Obj {
    let mut o = Obj::new();
    for (&x, &v) in order.iter().zip(values) {
        o.insert(g.id(x), num(v));
    }
    o
}

fn spectrum_results(report: &mut Report, g: &WeightedGraph, order: &[usize], s: &Spectrum) {
    report.results.insert("eigenvalues", nums(&s.values));
    report.results.insert(
        "multiplicities",
        Value::Array(
            s.multiplicities()
                .into_iter()
                .map(|(v, k)| Obj::new().set("value", num(v)).set("multiplicity", k as u64).into())
                .collect(),
        ),
    );
    report.results.insert(
        "eigenfunctions",
        Value::Array(s.functions.iter().map(|f| by_id(g, order, f.values()).into()).collect()),
    );
}

fn dims(ns: &[Dimension]) -> Value {
    Value::Array(ns.iter().map(|n| Value::from(n.to_string())).collect())
}

fn classification_value(c: &Classification) -> Value {
    let mut o = Obj::new().set("label", c.label());
    if let Some((k, n)) = c.params() {
        o.insert("K", num(k));
        o.insert("n", n.to_string());
    }
    match *c {
        Classification::WeightedPath3 { m, .. } | Classification::WeightedSquare { m, .. } => {
            o.insert("m", num(m))
        }
        _ => {}
    }
    o.into()
}

fn execute(command: Command) -> Outcome {
    match command {
        Command::Spectrum(GraphArg { graph }) => {
            let bg = load(&graph)?;
            let mut r = Report::new("spectrum");
            graph_inputs(&mut r, &graph);
            let s = laplacian_spectrum(bg.graph());
            let all: Vec<usize> = (0..bg.len()).collect();
            spectrum_results(&mut r, bg.graph(), &all, &s);
            let summary = format!("Laplacian spectrum: {:?}", s.values);
            Ok((r, true, summary))
        }
        Command::Steklov(GraphArg { graph }) => {
            let bg = load(&graph)?;
            let mut r = Report::new("steklov");
            graph_inputs(&mut r, &graph);
            let s = steklov_spectrum(&bg)?;
            spectrum_results(&mut r, bg.graph(), bg.boundary(), &s);
            r.results.insert("boundary", bg.boundary_ids());
            if s.second().is_none() {
                r.warnings.push("single boundary vertex: no second Steklov eigenvalue".into());
            }
            let summary = format!("Steklov spectrum: {:?}", s.values);
            Ok((r, true, summary))
        }
        Command::Curvature { graph: GraphArg { graph }, n } => {
            let bg = load(&graph)?;
            let mut r = Report::new("curvature");
            graph_inputs(&mut r, &graph);
            r.inputs.insert("n", dims(&n));
            let prof = curvature_profile(bg.graph(), &n)?;
            let mut table = Obj::new();
            for (x, row) in prof.kappa.iter().enumerate() {
                table.insert(bg.id(x), nums(row));
            }
            r.results.insert("kappa", table);
            r.results.insert("global_min", nums(&prof.global_min));
            let summary = format!("global curvature over n = {:?}: {:?}", n.iter().map(|d| d.to_string()).collect::<Vec<_>>(), prof.global_min);
            Ok((r, true, summary))
        }
        Command::CdCheck { graph: GraphArg { graph }, k, n, vertex } => {
            let bg = load(&graph)?;
            let mut r = Report::new("cd-check");
            graph_inputs(&mut r, &graph);
            r.inputs.insert("K", num(k));
            r.inputs.insert("n", n.to_string());
            r.inputs.insert("vertex", vertex.clone().map_or(Value::Null, Value::from));
            let v = vertex.as_deref().map(|id| bg.index_of(id)).transpose()?;
            let verdict = cd_check(bg.graph(), k, n, v)?;
            let all: Vec<usize> = (0..bg.len()).collect();
            r.results.insert("holds", verdict.holds);
            r.results.insert(
                "vertices",
                Value::Array(
                    verdict
                        .vertices
                        .iter()
                        .map(|vv| {
                            Obj::new()
                                .set("vertex", bg.id(vv.vertex))
                                .set("holds", vv.holds)
                                .set("min_eigenvalue", num(vv.min_eigenvalue))
                                .set("threshold", num(vv.threshold))
                                .set(
                                    "witness",
                                    vv.witness.as_ref().map_or(Value::Null, |w| by_id(bg.graph(), &all, w.values()).into()),
                                )
                                .into()
                        })
                        .collect(),
                ),
            );
            let summary = match verdict.first_violation() {
                None => format!("CD({k}, {n}) holds"),
                Some(f) => format!("CD({k}, {n}) fails at vertex `{}`", bg.id(f.vertex)),
            };
            Ok((r, verdict.holds, summary))
        }
        Command::Rigidity { graph: GraphArg { graph }, k, n } => {
            let bg = load(&graph)?;
            let mut r = Report::new("rigidity");
            graph_inputs(&mut r, &graph);
            r.inputs.insert("K", num(k));
            r.inputs.insert("n", n.to_string());
            let rep = check_rigidity(&bg, k, n)?;
            let verdict = |c: &stekcurv::ConditionVerdict| -> Value {
                Obj::new().set("passed", c.passed).set("detail", c.detail.as_str()).into()
            };
            let conditions = Obj::new()
                .set("cond1", verdict(&rep.conditions.cond1))
                .set("cond2", verdict(&rep.conditions.cond2))
                .set("cond3", verdict(&rep.conditions.cond3))
                .set("cond4", verdict(&rep.conditions.cond4))
                .set("cond5", verdict(&rep.cond5));
            let interior = rep.interior.as_ref().map_or(Value::Null, |i| {
                Obj::new()
                    .set("passed", i.passed)
                    .set("branch", format!("{:?}", i.branch))
                    .set("explanation", i.explanation.as_str())
                    .set(
                        "vertices",
                        Value::Array(
                            i.vertices
                                .iter()
                                .map(|v| {
                                    Obj::new()
                                        .set("vertex", bg.id(v.vertex))
                                        .set("passed", v.passed)
                                        .set("min_eigenvalue", num(v.min_eigenvalue))
                                        .set("threshold", num(v.threshold))
                                        .into()
                                })
                                .collect(),
                        ),
                    )
                    .into()
            });
            let d = &rep.diagnostics;
            let scan = d.ball_scan.as_ref().map_or(Value::Null, |s| {
                Obj::new()
                    .set("pair", s.pair_ids.clone().map_or(Value::Null, |(a, b)| Value::from(vec![a, b])))
                    .set("connected", s.connected)
                    .set("diameter", s.diameter.map_or(Value::Null, |d| Value::from(d as u64)))
                    .into()
            });
            let diagnostics = Obj::new()
                .set("cd_min_eigenvalue", num(d.cd_min_eigenvalue))
                .set("interior_eigenfunction_norm", opt_num(d.interior_eigenfunction_norm))
                .set("mu2", opt_num(d.mu2))
                .set("mu2_residual", opt_num(d.mu2_residual))
                .set("mu2_coincides", d.mu2_coincides.map_or(Value::Null, Value::from))
                .set("two_ball_max_residual", opt_num(d.two_ball_max_residual))
                .set("ball_scan", scan);
            r.results.insert("cd_holds", rep.cd_holds);
            r.results.insert("bound", num(rep.bound));
            r.results.insert("sigma2", opt_num(rep.sigma2));
            r.results.insert("slack", opt_num(rep.slack));
            r.results.insert("bound_equality", rep.bound_equality);
            r.results.insert("conditions", conditions);
            r.results.insert("interior_inequality", interior);
            r.results.insert(
                "biconditional_consistent",
                rep.biconditional_consistent.map_or(Value::Null, Value::from),
            );
            r.results.insert("classification", classification_value(&rep.classification));
            r.results.insert("diagnostics", diagnostics);
            if !rep.cd_holds {
                r.warnings.push(format!("CD({k}, {n}) fails; the equality characterization does not apply"));
            }
            if rep.sigma2.is_none() {
                r.warnings.push("single boundary vertex: no second Steklov eigenvalue".into());
            }
            let ok = rep.cd_holds && rep.bound_equality;
            let summary = format!(
                "sigma2 = {:?}, bound = {}, equality = {}, cond1 to cond5 = {}, class = {}",
                rep.sigma2,
                rep.bound,
                rep.bound_equality,
                rep.all_conditions(),
                rep.classification.label()
            );
            Ok((r, ok, summary))
        }
        Command::Classify { graph: GraphArg { graph }, class, k, n } => {
            let bg = load(&graph)?;
            let mut r = Report::new("classify");
            graph_inputs(&mut r, &graph);
            r.inputs.insert("class", format!("{class:?}").to_lowercase());
            let c = match class {
                ClassArg::Unit => classify_unit_weight(&bg)?,
                ClassArg::Normalized => classify_normalized(&bg)?,
                ClassArg::Partial => {
                    let (Some(k), Some(n)) = (k, n) else {
                        return Err(Failure::Usage("--class partial needs --K and --n".into()));
                    };
                    r.inputs.insert("K", num(k));
                    r.inputs.insert("n", n.to_string());
                    classify_partial(&bg, k, n)?
                }
            };
            r.results.insert("classification", classification_value(&c));
            let ok = c != Classification::NotRigid;
            Ok((r, ok, format!("classification: {}", c.label())))
        }
        Command::GreenCheck { graph: GraphArg { graph }, samples, seed } => {
            let bg = load(&graph)?;
            let mut r = Report::new("green-check");
            graph_inputs(&mut r, &graph);
            r.inputs.insert("samples", samples as u64);
            r.inputs.insert("seed", seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let scale = 1.0
                + bg.edges().iter().map(|e| e.weight).sum::<f64>()
                + bg.measures().iter().sum::<f64>();
            let tolerance = 1e-9 * scale;
            let mut worst: f64 = 0.0;
            for _ in 0..samples {
                let u = VertexFunction::from_fn(bg.len(), |_| rng.gen_range(-1.0..1.0));
                let v = VertexFunction::from_fn(bg.len(), |_| rng.gen_range(-1.0..1.0));
                worst = worst.max(check_green_identity(&bg, &u, &v)?);
            }
            let ok = worst <= tolerance;
            r.results.insert("max_residual", num(worst));
            r.results.insert("tolerance", num(tolerance));
            r.results.insert("passed", ok);
            Ok((r, ok, format!("Green identity: max residual {worst:e} over {samples} samples")))
        }
        Command::Generate { family, n, k, m, interior_size, lambda, out } => {
            let need = |name: &str, v: Option<f64>| v.ok_or_else(|| Failure::Usage(format!("--family needs --{name}")));
            let needn = || n.ok_or_else(|| Failure::Usage("--family needs --n".into()));
            let mut r = Report::new("generate");
            r.inputs.insert("family", format!("{family:?}"));
            r.inputs.insert("out", out.display().to_string());
            let bg = match family {
                FamilyArg::UnitPath3 => make_example(&ExampleFamily::UnitPath3)?,
                FamilyArg::UnitSquare => make_example(&ExampleFamily::UnitSquare)?,
                FamilyArg::UnitSquareDiag => make_example(&ExampleFamily::UnitSquareDiag)?,
                FamilyArg::WeightedPath3 => {
                    let (n, k, m) = (needn()?, need("K", k)?, need("m", m)?);
                    make_example(&ExampleFamily::WeightedPath3 { n, k, m })?
                }
                FamilyArg::WeightedSquare => {
                    let (k, m) = (need("K", k)?, need("m", m)?);
                    make_example(&ExampleFamily::WeightedSquare { k, m })?
                }
                FamilyArg::CompleteInterior => {
                    let (n, k, m) = (needn()?, need("K", k)?, need("m", m)?);
                    let s = interior_size.ok_or_else(|| Failure::Usage("--family complete-interior needs --interior-size".into()))?;
                    let fam = construct_rigid_family(&complete_graph(s)?, n, k, m, lambda)?;
                    r.results.insert("lambda", num(fam.lambda));
                    r.results.insert("threshold_lambda", opt_num(fam.threshold_lambda));
                    r.results.insert("interior_curvature", opt_num(fam.interior_curvature));
                    fam.graph
                }
            };
            for (name, v) in [("K", k), ("m", m), ("lambda", lambda)] {
                r.inputs.insert(name, opt_num(v));
            }
            r.inputs.insert("n", n.map_or(Value::Null, |d| Value::from(d.to_string())));
            r.inputs.insert("interior_size", interior_size.map_or(Value::Null, |s| Value::from(s as u64)));
            std::fs::write(&out, serialize_graph(&bg)).map_err(|e| Failure::Io(out.display().to_string(), e))?;
            r.results.insert("vertices", bg.len() as u64);
            r.results.insert("edges", bg.edges().len() as u64);
            r.results.insert("boundary", bg.boundary_ids());
            Ok((r, true, format!("wrote {} ({} vertices)", out.display(), bg.len())))
        }
        Command::BallScan(GraphArg { graph }) => {
            let bg = load(&graph)?;
            let mut r = Report::new("ball-scan");
            graph_inputs(&mut r, &graph);
            let s = disjoint_ball_scan(&bg.induced_interior_graph());
            r.results.insert("pair", s.pair_ids.clone().map_or(Value::Null, |(a, b)| Value::from(vec![a, b])));
            r.results.insert("connected", s.connected);
            r.results.insert("diameter", s.diameter.map_or(Value::Null, |d| Value::from(d as u64)));
            let summary = match &s.pair_ids {
                Some((a, b)) => format!("disjoint radius-2 balls around `{a}` and `{b}`"),
                None => "no disjoint radius-2 balls".to_string(),
            };
            Ok((r, true, summary))
        }
    }
}
