//! Command-line front end: `gen`, `matrix`, `det`, `analyze` and `verify`.
//!
//! Every JSON document written carries a `manifest` object with the command,
//! its parameters, a hash of the input configuration, seeds, tool version and
//! wall time. All fields except `wall_time_ms` are deterministic.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::analysis::{analyze, sample_points_on_component, AnalysisError, AnalyzeOptions, FactorizationReport};
use crate::exactalg::{Field, HPoly, PolyJson, Scalar};
use crate::geometry::{named_config, random_config, ConfigJson, GeometryError, NamedParams, PlaneCurve, PointConfig};
use crate::interp::{build_matrix, determinant, DetAlgorithm, InterpError, InterpProblem};
use crate::logbundle::{cross_check, generic_samples, zeros_mod_p, CrossCheckReport, LogError, PencilRule, Sample};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_GENERATION: i32 = 2;
pub const EXIT_NOT_SQUARE: i32 = 3;
pub const EXIT_BOUND_VIOLATION: i32 = 4;
pub const EXIT_DISAGREEMENT: i32 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {reason}")]
    BadFile { path: String, reason: String },
    #[error("generation failed: {0}")]
    Generation(String),
    #[error("{0}")]
    NotSquare(String),
    #[error("{0}")]
    Compute(String),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::BadFile { .. } | CliError::Io(_) => EXIT_USAGE,
            CliError::Generation(_) | CliError::Compute(_) => EXIT_GENERATION,
            CliError::NotSquare(_) => EXIT_NOT_SQUARE,
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::UnknownName(_) | GeometryError::BadParameter(_) | GeometryError::TooFewPoints(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Generation(e.to_string()),
        }
    }
}

impl From<InterpError> for CliError {
    fn from(e: InterpError) -> Self {
        match e {
            InterpError::NotSquare { .. } => CliError::NotSquare(e.to_string()),
            InterpError::NoParityChoice(_) | InterpError::BadParameters { .. } | InterpError::TooFewPoints(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<LogError> for CliError {
    fn from(e: LogError) -> Self {
        CliError::Compute(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "jumplines", version, about = "Interpolation determinants and jumping lines of point configurations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a point configuration (random general position or named).
    Gen(GenArgs),
    /// Dump the symbolic interpolation matrix (need not be square).
    Matrix(ProblemArgs),
    /// Compute the determinant of the interpolation matrix.
    Det(DetArgs),
    /// Factor the determinant into fixed components and a residual.
    Analyze(AnalyzeArgs),
    /// Compare vanishing of the determinant with jumps of the splitting type.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Human-readable output instead of JSON.
    #[arg(long)]
    pub pretty: bool,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Number of random points in general position.
    #[arg(long, conflicts_with = "named", required_unless_present = "named")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Coordinates are drawn from [-bound, bound]; must be at least n.
    #[arg(long, default_value_t = 100)]
    pub bound: i64,
    /// triangle, collinear3, example-5-2, two-conics(D)
    #[arg(long)]
    pub named: Option<String>,
    /// Degree parameter for two-conics when not given inline.
    #[arg(long)]
    pub d: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    /// Configuration JSON written by `gen`.
    #[arg(long)]
    pub config: PathBuf,
    /// Degree of the forms; defaults from the number of points.
    #[arg(long, requires = "m")]
    pub d: Option<u32>,
    /// Multiplicity of the moving fat point.
    #[arg(long, requires = "d")]
    pub m: Option<u32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DetArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// interpolation or bareiss.
    #[arg(long, default_value = "interpolation")]
    pub algorithm: DetAlgorithm,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Primes used by the irreducibility probe.
    #[arg(long, default_value_t = 8)]
    pub primes: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Append this many rational points per component.
    #[arg(long, default_value_t = 0)]
    pub emit_samples: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Number of generic sample points.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Rational points sampled on each detected component.
    #[arg(long, default_value_t = 3)]
    pub component_samples: usize,
    /// Work over F_p: sample points of {F = 0} over F_p and run both sides there.
    #[arg(long)]
    pub mod_p: Option<u64>,
    /// Append this many extra points per component to the output.
    #[arg(long, default_value_t = 0)]
    pub emit_samples: usize,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub config_hash: Option<String>,
    pub seeds: Vec<u64>,
    pub version: String,
    pub wall_time_ms: u64,
}

/// Hex SHA-256 of the compact JSON form of a configuration.
pub fn config_hash(c: &PointConfig) -> String {
    let text = serde_json::to_string(&c.to_json()).expect("serializable");
    Sha256::digest(text.as_bytes()).iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

struct Output {
    value: Value,
    text: String,
    code: i32,
}

/// Parses `args` (including the program name) and runs the command, writing
/// the result to `stdout` or the `--out` file. Returns the exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let started = Instant::now();
    let (output_args, result) = match &cli.command {
        Command::Gen(a) => (&a.output, cmd_gen(a)),
        Command::Matrix(a) => (&a.output, cmd_matrix(a, stderr)),
        Command::Det(a) => (&a.problem.output, cmd_det(a, stderr)),
        Command::Analyze(a) => (&a.problem.output, cmd_analyze(a, stderr)),
        Command::Verify(a) => (&a.problem.output, cmd_verify(a, stderr)),
    };
    let out = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let mut value = out.value;
    if let Some(m) = value.get_mut("manifest").and_then(Value::as_object_mut) {
        m.insert("wall_time_ms".into(), json!(started.elapsed().as_millis() as u64));
    }
    let body = if output_args.pretty {
        out.text
    } else {
        let mut s = serde_json::to_string_pretty(&value).expect("serializable");
        s.push('\n');
        s
    };
    let written = match &output_args.out {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => stdout.write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    out.code
}

fn manifest(command: &str, parameters: Value, config: Option<&PointConfig>, seeds: Vec<u64>) -> Value {
    serde_json::to_value(RunManifest {
        command: command.into(),
        parameters,
        config_hash: config.map(config_hash),
        seeds,
        version: env!("CARGO_PKG_VERSION").into(),
        wall_time_ms: 0,
    })
    .expect("serializable")
}

fn with_manifest<T: Serialize>(body: &T, manifest: Value) -> Value {
    let mut v = serde_json::to_value(body).expect("serializable");
    match v.as_object_mut() {
        Some(obj) => {
            obj.insert("manifest".into(), manifest);
            v
        }
        None => json!({ "result": v, "manifest": manifest }),
    }
}

fn config_text(c: &PointConfig) -> String {
    let mut s = format!("{} ({} points", c.label, c.len());
    if let Some(seed) = c.seed {
        let _ = write!(s, ", seed {seed}");
    }
    s.push_str(")\n");
    for (i, p) in c.points().iter().enumerate() {
        let _ = writeln!(s, "  P{i} = {p}");
    }
    s
}

fn cmd_gen(a: &GenArgs) -> Result<Output, CliError> {
    let (config, params) = match (&a.named, a.n) {
        (Some(name), _) => (
            named_config(
                name,
                NamedParams {
                    seed: Some(a.seed),
                    d: a.d,
                },
            )?,
            json!({ "named": name, "seed": a.seed, "d": a.d }),
        ),
        (None, Some(n)) => (
            random_config(n, a.seed, a.bound)?,
            json!({ "n": n, "seed": a.seed, "bound": a.bound }),
        ),
        (None, None) => return Err(CliError::Usage("either --n or --named is required".into())),
    };
    let m = manifest("gen", params, Some(&config), vec![a.seed]);
    Ok(Output {
        value: with_manifest(&config.to_json(), m),
        text: config_text(&config),
        code: EXIT_OK,
    })
}

pub fn read_config(path: &PathBuf) -> Result<PointConfig, CliError> {
    let bad = |reason: String| CliError::BadFile {
        path: path.display().to_string(),
        reason,
    };
    let text = std::fs::read_to_string(path).map_err(|e| bad(e.to_string()))?;
    let j: ConfigJson = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    PointConfig::from_json(&j).map_err(|e| bad(e.to_string()))
}

/// Loads the configuration and resolves `(d, m)`, warning on non-square input.
fn load_problem(a: &ProblemArgs, stderr: &mut dyn Write) -> Result<InterpProblem, CliError> {
    let z = read_config(&a.config)?;
    let p = match (a.d, a.m) {
        (Some(d), Some(m)) => InterpProblem::new(d, m, z)?,
        _ => InterpProblem::with_parity(z)?,
    };
    if !p.is_square() {
        let _ = writeln!(
            stderr,
            "warning: (d, m) = ({}, {}) gives a {}x{} matrix; only the matrix dump is available",
            p.d,
            p.m,
            p.rows(),
            p.cols()
        );
    }
    Ok(p)
}

fn problem_params(p: &InterpProblem) -> Value {
    json!({ "d": p.d, "m": p.m, "n": p.z.len(), "square": p.is_square() })
}

fn cmd_matrix(a: &ProblemArgs, stderr: &mut dyn Write) -> Result<Output, CliError> {
    let p = load_problem(a, stderr)?;
    let m = build_matrix(&p)?;
    let mut text = format!("{}x{} interpolation matrix, (d, m) = ({}, {})\n", m.rows(), m.cols(), p.d, p.m);
    for (i, row) in m.entries.iter().enumerate() {
        let kind = if i < m.n_evaluation { "eval" } else { "deriv" };
        let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        let _ = writeln!(text, "{kind:>5} [{}]", cells.join(", "));
    }
    let man = manifest("matrix", problem_params(&p), Some(&p.z), vec![]);
    Ok(Output {
        value: with_manifest(&m.to_json(), man),
        text,
        code: EXIT_OK,
    })
}

fn require_square(p: &InterpProblem) -> Result<(), CliError> {
    if p.is_square() {
        Ok(())
    } else {
        Err(CliError::NotSquare(format!(
            "(d, m) = ({}, {}) gives a {}x{} matrix; the determinant needs a square matrix",
            p.d,
            p.m,
            p.rows(),
            p.cols()
        )))
    }
}

fn cmd_det(a: &DetArgs, stderr: &mut dyn Write) -> Result<Output, CliError> {
    let p = load_problem(&a.problem, stderr)?;
    require_square(&p)?;
    let det = determinant(&p, a.algorithm)?;
    let mut params = problem_params(&p);
    params["algorithm"] = json!(a.algorithm.to_string());
    let man = manifest("det", params, Some(&p.z), vec![]);
    let mut v = with_manifest(&det.to_json(), man);
    v["actual_degree"] = json!(if det.is_zero() { None } else { Some(det.canonical.degree()) });
    let text = format!(
        "F (degree {}, expected {}): {}\n",
        det.canonical.degree(),
        det.expected_degree,
        if det.is_zero() { "0".to_string() } else { det.canonical.to_string() }
    );
    Ok(Output {
        value: v,
        text,
        code: EXIT_OK,
    })
}

fn describe(c: &PlaneCurve) -> String {
    match c.degree {
        1 => format!("L (line through {} pts)", c.support.len()),
        2 => format!("C (conic through {} pts)", c.support.len()),
        t => format!("curve of degree {t} through {} pts", c.support.len()),
    }
}

fn report_text(r: &FactorizationReport) -> String {
    let mut s = format!(
        "{}: (d, m) = ({}, {}), n = {}, deg F = {}\n",
        r.label, r.d, r.m, r.n, r.f_degree
    );
    if r.f_is_zero {
        s.push_str("F is identically zero\n");
        return s;
    }
    for c in &r.findings {
        let _ = writeln!(
            s,
            "{}: multiplicity {} (predicted \u{2265} {})",
            describe(&c.curve),
            c.observed_multiplicity,
            c.predicted_multiplicity
        );
    }
    let _ = writeln!(s, "residual of degree {}", r.residual.degree());
    let _ = writeln!(s, "irreducibility: {:?}", r.irreducibility);
    for t in &r.h_tables {
        let hs: Vec<String> = t.rows.iter().map(|row| format!("h{}={}", row.j, row.actual)).collect();
        let _ = writeln!(
            s,
            "  at {} on component {}: {} (sum {}), multiplicity of F {}",
            t.point,
            t.component,
            hs.join(" "),
            t.h_sum,
            t.multiplicity_at_point
        );
    }
    s
}

fn component_samples(
    r: &FactorizationReport,
    z: &PointConfig,
    count: usize,
    seed: u64,
) -> Vec<(usize, Vec<crate::geometry::ProjPoint>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let curves: Vec<&PlaneCurve> = r.findings.iter().map(|c| &c.curve).collect();
    curves
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let others: Vec<&PlaneCurve> = curves
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, o)| *o)
                .collect();
            (i, sample_points_on_component(c, z, &others, count, &mut rng))
        })
        .collect()
}

fn samples_json(s: &[(usize, Vec<crate::geometry::ProjPoint>)]) -> Value {
    json!(s
        .iter()
        .map(|(i, pts)| json!({
            "component": i,
            "points": pts.iter().map(|p| p.to_strings()).collect::<Vec<_>>(),
        }))
        .collect::<Vec<_>>())
}

fn cmd_analyze(a: &AnalyzeArgs, stderr: &mut dyn Write) -> Result<Output, CliError> {
    let p = load_problem(&a.problem, stderr)?;
    require_square(&p)?;
    let det = determinant(&p, DetAlgorithm::Interpolation)?;
    let opts = AnalyzeOptions {
        n_primes: a.primes,
        seed: a.seed,
        h_tables: true,
    };
    let report = analyze(&p, &det, &opts)?;
    let mut params = problem_params(&p);
    params["primes"] = json!(a.primes);
    let man = manifest("analyze", params, Some(&p.z), vec![a.seed]);
    let mut v = with_manifest(&report.to_json(), man);
    if a.emit_samples > 0 {
        v["samples"] = samples_json(&component_samples(&report, &p.z, a.emit_samples, a.seed));
    }
    let violations = report.violations();
    if !violations.is_empty() {
        let _ = writeln!(stderr, "observed multiplicity below prediction for components {violations:?}");
    }
    Ok(Output {
        value: v,
        text: report_text(&report),
        code: if violations.is_empty() { EXIT_OK } else { EXIT_BOUND_VIOLATION },
    })
}

fn check_text(c: &CrossCheckReport) -> String {
    let mut s = String::new();
    for r in &c.records {
        let _ = writeln!(
            s,
            "{:>12} B=({}) F(B)=0: {:5} splitting ({}, {}) jump {} {}",
            r.source,
            r.b.join(":"),
            r.f_is_zero,
            r.d1,
            r.d2,
            r.jump,
            if r.agree { "agree" } else { "DISAGREE" }
        );
    }
    let _ = writeln!(
        s,
        "{} of {} samples agree over {}",
        c.summary.agreements, c.summary.total, c.summary.field
    );
    s
}

fn random_points_mod_p(field: Field, count: usize, seed: u64) -> Vec<[Scalar; 3]> {
    let Field::Prime(p) = field else { return Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let c = [0; 3].map(|_| field.from_i64(rng.gen_range(0..p as i64)));
        if !c.iter().all(Scalar::is_zero) {
            out.push(c);
        }
    }
    out
}

fn cmd_verify(a: &VerifyArgs, stderr: &mut dyn Write) -> Result<Output, CliError> {
    let p = load_problem(&a.problem, stderr)?;
    require_square(&p)?;
    let det = determinant(&p, DetAlgorithm::Interpolation)?;
    let report = analyze(
        &p,
        &det,
        &AnalyzeOptions {
            n_primes: 0,
            seed: a.seed,
            h_tables: false,
        },
    )?;
    let comp = component_samples(&report, &p.z, a.component_samples, a.seed);
    let (f, samples, rule): (HPoly, Vec<Sample>, PencilRule) = match a.mod_p {
        None => {
            let mut samples: Vec<Sample> = generic_samples(a.samples, a.seed, 1000)
                .iter()
                .map(|b| Sample::rational(b, "generic"))
                .collect();
            for (i, pts) in &comp {
                samples.extend(pts.iter().map(|b| Sample::rational(b, format!("component {i}"))));
            }
            (det.raw.clone(), samples, PencilRule::GramSchmidt)
        }
        Some(prime) => {
            let field = Field::prime(prime).map_err(|e| CliError::Usage(e.to_string()))?;
            let f = det
                .canonical
                .to_field(field)
                .map_err(|e| CliError::Compute(e.to_string()))?;
            if f.is_zero() {
                return Err(CliError::Usage(format!("F vanishes identically modulo {prime}")));
            }
            let mut samples: Vec<Sample> = random_points_mod_p(field, a.samples, a.seed)
                .into_iter()
                .map(|c| Sample {
                    coords: c,
                    source: "generic".into(),
                })
                .collect();
            samples.extend(zeros_mod_p(&f, a.samples, a.seed)?.into_iter().map(|c| Sample {
                coords: c,
                source: "F_p zero".into(),
            }));
            for (i, pts) in &comp {
                for b in pts {
                    if let Ok(c) = b.coords_in(field) {
                        samples.push(Sample {
                            coords: c,
                            source: format!("component {i}"),
                        });
                    }
                }
            }
            (f, samples, PencilRule::Rotated)
        }
    };
    let check = cross_check(&p.z, &f, &samples, rule)?;
    let mut params = problem_params(&p);
    params["samples"] = json!(a.samples);
    params["component_samples"] = json!(a.component_samples);
    params["mod_p"] = json!(a.mod_p);
    let man = manifest("verify", params, Some(&p.z), vec![a.seed]);
    let mut v = with_manifest(&check, man);
    v["components"] = json!(report
        .findings
        .iter()
        .map(|c| PolyJson::from(&c.curve.poly))
        .collect::<Vec<_>>());
    if a.emit_samples > 0 {
        v["samples"] = samples_json(&component_samples(&report, &p.z, a.emit_samples, a.seed ^ 1));
    }
    let disagreements = check.summary.disagreements;
    if disagreements > 0 {
        let _ = writeln!(stderr, "{disagreements} sample(s) disagree");
    }
    Ok(Output {
        value: v,
        text: check_text(&check),
        code: if disagreements == 0 { EXIT_OK } else { EXIT_DISAGREEMENT },
    })
}

/// Caps the global thread pool at `JL_THREADS` when set.
pub fn init_threads_from_env() {
    if let Some(n) = std::env::var("JL_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Removes the wall-time field so outputs of repeated runs can be compared.
pub fn strip_wall_time(v: &mut Value) {
    if let Some(m) = v.get_mut("manifest").and_then(Value::as_object_mut) {
        m.remove("wall_time_ms");
    }
}
