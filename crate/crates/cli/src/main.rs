//! Command-line front end: exact curve evaluation, half-line
//! surjections and their fiber witnesses, growth-order estimation,
//! algebra-element disc scans, independent family construction, the
//! sequence-space maps, and the verification suites.
//!
//! Every structured output is JSON with a stable layout (CSV only for
//! point traces), so identical invocations produce byte-identical
//! files. Exit codes: 0 when everything passed, 1 when a verification
//! or computation failed, 2 for configuration errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use peano_lab_core::curve::{eval_rational, CurveKind};
use peano_lab_core::family::{
    ad_set, independence_test, AdSet, FamilyMember, RationalEnumeration, SeedConstant,
};
use peano_lab_core::orders::{
    order_from_coeff_fit, order_from_coeffs, order_from_growth_auto, prescribed_order_series,
    EstimateMethod, OrderEstimate, PolySpec, SeriesFile, TruncatedSeries,
    DEFAULT_ALGEBRA_TRUNCATION, DEFAULT_WINDOW_FRACTION,
};
use peano_lab_core::seqmaps::{phi_r, product_metric, BoxSpec, FiniteSeq, SeqFile};
use peano_lab_core::tiling::{composite_eval, fiber_witnesses, LineMap, TargetPoint, TargetSpace};
use peano_lab_core::verify::{coverage_scan, report_json, run_suite, unboundedness_scan};
use peano_lab_core::{algebra, format_rational, parse_rational};

#[derive(Parser)]
#[command(
    name = "peano-lab",
    version,
    about = "Space-filling curves, unbounded-fiber surjections, and their verification suites"
)]
struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Evaluation depth for curve and tiling computations.
    #[arg(long, global = true)]
    depth: Option<u32>,
    /// Series truncation for order computations.
    #[arg(long, global = true)]
    trunc: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate or trace the unit-cube curves.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// The half-line-to-target surjection and its fibers.
    #[command(subcommand)]
    Surjection(SurjectionCmd),
    /// Growth-order series and estimators.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Composed algebra elements: order reading and disc coverage.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Families with almost-disjoint channel sets.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Sequence-space coordinate maps and metrics.
    #[command(subcommand)]
    Seq(SeqCmd),
    /// Coverage, unboundedness, and property suites.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum CurveCmd {
    /// Evaluate a curve at an exact rational parameter.
    Eval {
        /// Curve family: hilbert or peano.
        #[arg(long)]
        kind: String,
        /// Ambient dimension (2 or 3 for hilbert, 2 for peano).
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Parameter in [0, 1] as NUM/DEN, an integer, or a decimal.
        #[arg(long)]
        t: String,
    },
    /// Emit a CSV trace `t,x1,...,xd` of equally spaced samples.
    Trace {
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Number of rows (parameters 0, 1/(N-1), ..., 1).
        #[arg(long)]
        samples: u64,
    },
}

#[derive(Subcommand)]
enum SurjectionCmd {
    /// Evaluate the composite surjection at an exact parameter.
    Eval {
        /// Target space: r1, r2, r3, ... or c00.
        #[arg(long, default_value = "r2")]
        target: String,
        #[arg(long)]
        t: String,
    },
    /// Certified fiber witnesses for a target point.
    Witnesses {
        #[arg(long, default_value = "r2")]
        target: String,
        /// Target coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// The last witness must exceed this parameter.
        #[arg(long, default_value_t = 0.0)]
        beyond: f64,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
}

#[derive(Subcommand)]
enum OrderCmd {
    /// Write the coefficient file of a prescribed-order series.
    Coeffs {
        #[arg(long)]
        alpha: f64,
        /// Truncation order N (coefficients 0..=N).
        #[arg(long)]
        n: usize,
    },
    /// Estimate the growth order of a series file.
    Estimate {
        #[arg(long)]
        series: PathBuf,
        /// Estimator: coeff, fit, or growth.
        #[arg(long, default_value = "coeff")]
        method: String,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Estimated order of a polynomial in prescribed-order generators.
    Order {
        /// Generator orders, comma separated (one per variable).
        #[arg(long)]
        orders: String,
        /// Polynomial in z1, z2, ... with integer or decimal factors.
        #[arg(long)]
        poly: String,
    },
    /// Scan a disc of target values for certified preimages.
    Scan {
        #[arg(long)]
        orders: String,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        eps: f64,
        /// Largest parameter a witness may use.
        #[arg(long, default_value_t = 50.0)]
        t_budget: f64,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Build channel sets for the given seed constants.
    Build {
        /// Comma-separated seeds: sqrtN, phi, pi.
        #[arg(long)]
        seeds: String,
        /// Channel-set length per member.
        #[arg(long)]
        prefix: usize,
    },
    /// Sampled-rank report for a stored family.
    Rank {
        #[arg(long)]
        family: PathBuf,
        /// Evaluation points drawn per member (4 per tile).
        #[arg(long, default_value_t = 8)]
        samples_per_member: usize,
    },
}

#[derive(Subcommand)]
enum SeqCmd {
    /// The coordinate homeomorphism at one point.
    Phi {
        #[arg(long)]
        r: f64,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
    },
    /// Distance between two stored sequences.
    Metric {
        /// product (truncated series metric) or uniform (capped sup).
        #[arg(long)]
        kind: String,
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        /// Terms for the product metric; defaults to cover both
        /// supports, at least 16.
        #[arg(long)]
        terms: Option<u32>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run a named property suite.
    Suite {
        /// order-laws, lemma, family-rank, adset, or seq-bounds.
        #[arg(long)]
        name: String,
    },
    /// Certified coverage of an epsilon-net over a box.
    Coverage {
        #[arg(long, default_value = "r2")]
        target: String,
        /// Box as lo:hi pairs, comma separated, e.g. "-2:2,-2:2".
        #[arg(long = "box", allow_hyphen_values = true)]
        net_box: String,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 1e6)]
        t_budget: f64,
    },
    /// Fiber witnesses beyond each bound for each point.
    Unbounded {
        #[arg(long, default_value = "r2")]
        target: String,
        /// Points as semicolon-separated coordinate lists,
        /// e.g. "0,0;1.5,-0.5".
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Comma-separated parameter bounds.
        #[arg(long, default_value = "10,100,1000")]
        bounds: String,
        #[arg(long, default_value_t = 2000)]
        tile_budget: u64,
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
    },
}

// ---------------------------------------------------------------------------
// Outcome plumbing
// ---------------------------------------------------------------------------

enum CliError {
    /// Unusable flags or inputs; exit code 2.
    Config(String),
    /// The computation or verification itself failed; exit code 1.
    Run(String),
}

struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }
}

fn config<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

fn run_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Run(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match dispatch(cli) {
        Ok(outcome) => {
            if let Err(e) = emit(&out, &outcome.text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// Flag parsing helpers
// ---------------------------------------------------------------------------

fn parse_curve_kind(kind: &str, dim: usize) -> Result<CurveKind, CliError> {
    match (kind, dim) {
        ("hilbert", 2) => Ok(CurveKind::Hilbert2),
        ("hilbert", 3) => Ok(CurveKind::Hilbert3),
        ("peano", 2) => Ok(CurveKind::Peano),
        _ => Err(CliError::Config(format!(
            "unsupported curve {kind:?} in dimension {dim}; use hilbert (2 or 3) or peano (2)"
        ))),
    }
}

fn parse_target(text: &str) -> Result<TargetSpace, CliError> {
    if text == "c00" {
        return Ok(TargetSpace::FiniteSupport);
    }
    if let Some(dim) = text.strip_prefix('r').and_then(|d| d.parse::<usize>().ok()) {
        return Ok(TargetSpace::Euclidean { dim });
    }
    Err(CliError::Config(format!(
        "unknown target {text:?}; use r1, r2, r3, ... or c00"
    )))
}

fn parse_param(text: &str) -> Result<BigRational, CliError> {
    parse_rational(text)
        .ok_or_else(|| CliError::Config(format!("cannot parse parameter {text:?} as a rational")))
}

fn parse_f64_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Config(format!("bad number {p:?}")))
        })
        .collect()
}

fn parse_box(text: &str) -> Result<BoxSpec, CliError> {
    let intervals = text
        .split(',')
        .map(|pair| {
            let (lo, hi) = pair
                .split_once(':')
                .ok_or_else(|| CliError::Config(format!("interval {pair:?} is not lo:hi")))?;
            let lo: f64 = lo.trim().parse().map_err(|_| config(format!("bad bound {lo:?}")))?;
            let hi: f64 = hi.trim().parse().map_err(|_| config(format!("bad bound {hi:?}")))?;
            Ok((lo, hi))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(BoxSpec { intervals })
}

fn parse_points(text: &str) -> Result<Vec<Vec<f64>>, CliError> {
    text.split(';').map(parse_f64_list).collect()
}

fn build_element(
    orders: &str,
    poly: &str,
    trunc: Option<usize>,
) -> Result<algebra::AlgebraElement, CliError> {
    let orders = parse_f64_list(orders)?;
    if orders.is_empty() {
        return Err(CliError::Config("need at least one generator order".into()));
    }
    let truncation = trunc.unwrap_or(DEFAULT_ALGEBRA_TRUNCATION);
    let generators = orders
        .iter()
        .map(|&o| algebra::GeneratorSpec::new(o, truncation))
        .collect::<Result<Vec<_>, _>>()
        .map_err(config)?;
    let poly = PolySpec::parse(poly)
        .and_then(|p| p.widen(generators.len()))
        .map_err(config)?;
    algebra::AlgebraElement::new(poly, generators).map_err(config)
}

// ---------------------------------------------------------------------------
// Output shapes
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct PointOut {
    t: String,
    depth: u32,
    coords: Vec<String>,
    coords_f64: Vec<f64>,
}

#[derive(Serialize)]
struct WitnessOut {
    witnesses: Vec<String>,
    residuals: Vec<f64>,
}

#[derive(Serialize)]
struct EstimateOut {
    estimate: f64,
    method: String,
    window: [usize; 2],
    residual: Option<f64>,
}

impl EstimateOut {
    fn from(est: &OrderEstimate) -> Self {
        let method = match est.method {
            EstimateMethod::CoefficientWindowMax => "coeff",
            EstimateMethod::CoefficientFit => "fit",
            EstimateMethod::ModulusGrowth => "growth",
        };
        EstimateOut {
            estimate: est.value,
            method: method.to_string(),
            window: [est.window.0, est.window.1],
            residual: est.residual,
        }
    }
}

#[derive(Serialize)]
struct PhiOut {
    r: f64,
    t: f64,
    value: f64,
}

#[derive(Serialize)]
struct MetricOut {
    kind: String,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tail_bound: Option<f64>,
}

#[derive(Serialize, serde::Deserialize)]
struct FamilyFile {
    members: Vec<AdSet>,
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

fn dispatch(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Curve(cmd) => curve_cmd(cmd, cli.depth),
        Command::Surjection(cmd) => surjection_cmd(cmd, cli.depth),
        Command::Order(cmd) => order_cmd(cmd),
        Command::Algebra(cmd) => algebra_cmd(cmd, cli.trunc),
        Command::Family(cmd) => family_cmd(cmd, cli.depth),
        Command::Seq(cmd) => seq_cmd(cmd),
        Command::Verify(cmd) => verify_cmd(cmd, cli.seed),
    }
}

fn curve_cmd(cmd: CurveCmd, depth: Option<u32>) -> Result<Outcome, CliError> {
    let depth = depth.unwrap_or(16);
    match cmd {
        CurveCmd::Eval { kind, dim, t } => {
            let kind = parse_curve_kind(&kind, dim)?;
            let t = parse_param(&t)?;
            if t < BigRational::from_integer(0.into()) || t > BigRational::from_integer(1.into()) {
                return Err(CliError::Config("curve parameter must lie in [0, 1]".into()));
            }
            let point = eval_rational(kind, &t, depth).map_err(run_err)?;
            let coords: Vec<BigRational> =
                point.coords.iter().map(|c| c.to_rational()).collect();
            let out = PointOut {
                t: format_rational(&t),
                depth,
                coords: coords.iter().map(format_rational).collect(),
                coords_f64: point.to_f64(),
            };
            Ok(Outcome::ok(report_json(&out)))
        }
        CurveCmd::Trace { kind, dim, samples } => {
            let kind = parse_curve_kind(&kind, dim)?;
            if samples < 2 {
                return Err(CliError::Config("need at least 2 samples".into()));
            }
            let mut csv = String::from("t");
            for i in 1..=kind.dim() {
                csv.push_str(&format!(",x{i}"));
            }
            csv.push('\n');
            for i in 0..samples {
                let t = BigRational::new((i as i64).into(), ((samples - 1) as i64).into());
                let point = eval_rational(kind, &t, depth).map_err(run_err)?;
                csv.push_str(&format!("{}", t.to_f64().unwrap_or(f64::NAN)));
                for c in point.to_f64() {
                    csv.push_str(&format!(",{c}"));
                }
                csv.push('\n');
            }
            Ok(Outcome::ok(csv))
        }
    }
}

fn surjection_cmd(cmd: SurjectionCmd, depth: Option<u32>) -> Result<Outcome, CliError> {
    match cmd {
        SurjectionCmd::Eval { target, t } => {
            let depth = depth.unwrap_or(16);
            let map = LineMap::composite(parse_target(&target)?).map_err(config)?;
            let t = parse_param(&t)?;
            if t < BigRational::from_integer(0.into()) {
                return Err(CliError::Config("surjection parameter must be >= 0".into()));
            }
            let point = composite_eval(&map, &t, depth).map_err(run_err)?;
            let out = PointOut {
                t: format_rational(&t),
                depth,
                coords: point.coords.iter().map(format_rational).collect(),
                coords_f64: point.to_f64(),
            };
            Ok(Outcome::ok(report_json(&out)))
        }
        SurjectionCmd::Witnesses { target, point, count, beyond, tol } => {
            let map = LineMap::composite(parse_target(&target)?).map_err(config)?;
            let coords = parse_f64_list(&point)?;
            let a = TargetPoint::from_f64s(&coords).map_err(config)?;
            let report = fiber_witnesses(&map, &a, count, beyond, tol).map_err(run_err)?;
            let out = WitnessOut {
                witnesses: report.witnesses.iter().map(format_rational).collect(),
                residuals: report.residuals,
            };
            Ok(Outcome::ok(report_json(&out)))
        }
    }
}

fn order_cmd(cmd: OrderCmd) -> Result<Outcome, CliError> {
    match cmd {
        OrderCmd::Coeffs { alpha, n } => {
            let series = prescribed_order_series(alpha, n).map_err(config)?;
            let file = SeriesFile {
                coeffs: series
                    .coefficients()
                    .iter()
                    .map(|c| {
                        let (re, im) = c.to_f64_pair();
                        [re, im]
                    })
                    .collect(),
            };
            Ok(Outcome::ok(report_json(&file)))
        }
        OrderCmd::Estimate { series, method } => {
            let text = read_to_string(&series)?;
            let series = TruncatedSeries::from_json(&text).map_err(config)?;
            let est = match method.as_str() {
                "coeff" => order_from_coeffs(&series, DEFAULT_WINDOW_FRACTION),
                "fit" => order_from_coeff_fit(&series, DEFAULT_WINDOW_FRACTION),
                "growth" => order_from_growth_auto(&series),
                other => {
                    return Err(CliError::Config(format!(
                        "unknown method {other:?}; use coeff, fit, or growth"
                    )))
                }
            }
            .map_err(run_err)?;
            Ok(Outcome::ok(report_json(&EstimateOut::from(&est))))
        }
    }
}

fn algebra_cmd(cmd: AlgebraCmd, trunc: Option<usize>) -> Result<Outcome, CliError> {
    match cmd {
        AlgebraCmd::Order { orders, poly } => {
            let element = build_element(&orders, &poly, trunc)?;
            let est = element.order().map_err(run_err)?;
            Ok(Outcome::ok(report_json(&EstimateOut::from(&est))))
        }
        AlgebraCmd::Scan { orders, poly, radius, eps, t_budget } => {
            let element = build_element(&orders, &poly, trunc)?;
            let report =
                algebra::surjectivity_scan(&element, radius, eps, t_budget).map_err(run_err)?;
            let covered = report.misses.is_empty();
            Ok(Outcome { text: report_json(&report), pass: covered })
        }
    }
}

fn family_cmd(cmd: FamilyCmd, depth: Option<u32>) -> Result<Outcome, CliError> {
    match cmd {
        FamilyCmd::Build { seeds, prefix } => {
            let mut enumeration = RationalEnumeration::new();
            let mut members = Vec::new();
            for name in seeds.split(',') {
                let constant = SeedConstant::parse(name.trim()).map_err(config)?;
                members.push(ad_set(&mut enumeration, &constant, prefix).map_err(run_err)?);
            }
            Ok(Outcome::ok(report_json(&FamilyFile { members })))
        }
        FamilyCmd::Rank { family, samples_per_member } => {
            let text = read_to_string(&family)?;
            let file: FamilyFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Config(format!("bad family file: {e}")))?;
            let target = TargetSpace::Euclidean { dim: 2 };
            let members = file
                .members
                .iter()
                .map(|set| FamilyMember::from_ad_set(set, target))
                .collect::<Result<Vec<_>, _>>()
                .map_err(config)?;
            let locals: Vec<BigRational> = [(1i64, 4i64), (5, 16), (3, 8), (13, 16)]
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect();
            if samples_per_member == 0 {
                return Err(CliError::Config("need at least one sample per member".into()));
            }
            let tiles = samples_per_member.div_ceil(locals.len()).max(1);
            let report = independence_test(&members, tiles, &locals, depth.unwrap_or(16))
                .map_err(run_err)?;
            let pass = report.pass;
            Ok(Outcome { text: report_json(&report), pass })
        }
    }
}

fn seq_cmd(cmd: SeqCmd) -> Result<Outcome, CliError> {
    match cmd {
        SeqCmd::Phi { r, t } => {
            let value = phi_r(r, t).map_err(run_err)?;
            Ok(Outcome::ok(report_json(&PhiOut { r, t, value })))
        }
        SeqCmd::Metric { kind, x, y, terms } => {
            let read_seq = |path: &Path| -> Result<FiniteSeq, CliError> {
                let text = read_to_string(path)?;
                let file: SeqFile = serde_json::from_str(&text)
                    .map_err(|e| CliError::Config(format!("bad sequence file: {e}")))?;
                FiniteSeq::from_file(&file).map_err(config)
            };
            let a = read_seq(&x)?;
            let b = read_seq(&y)?;
            match kind.as_str() {
                "product" => {
                    let needed = a.support().max(b.support()) as u32;
                    let terms = terms.unwrap_or(needed.max(16));
                    let d = product_metric(&a, &b, terms).map_err(run_err)?;
                    Ok(Outcome::ok(report_json(&MetricOut {
                        kind,
                        value: d.value,
                        terms: Some(terms),
                        tail_bound: Some(d.tail_bound),
                    })))
                }
                "uniform" => {
                    // Sequences act as functions on a shared index set;
                    // entries beyond a support are zero.
                    let len = a.support().max(b.support());
                    let value = (1..=len)
                        .map(|n| (a.coordinate(n) - b.coordinate(n)).abs().min(1.0))
                        .fold(0.0f64, f64::max);
                    Ok(Outcome::ok(report_json(&MetricOut {
                        kind,
                        value,
                        terms: None,
                        tail_bound: None,
                    })))
                }
                other => Err(CliError::Config(format!(
                    "unknown metric {other:?}; use product or uniform"
                ))),
            }
        }
    }
}

fn verify_cmd(cmd: VerifyCmd, seed: u64) -> Result<Outcome, CliError> {
    match cmd {
        VerifyCmd::Suite { name } => {
            let result = run_suite(&name, seed).map_err(config)?;
            let pass = result.all_pass();
            Ok(Outcome { text: report_json(&result), pass })
        }
        VerifyCmd::Coverage { target, net_box, eps, t_budget } => {
            let map = LineMap::composite(parse_target(&target)?).map_err(config)?;
            let spec = parse_box(&net_box)?;
            let report = coverage_scan(&map, &spec, eps, t_budget).map_err(run_err)?;
            let pass = report.fully_covered();
            Ok(Outcome { text: report_json(&report), pass })
        }
        VerifyCmd::Unbounded { target, points, bounds, tile_budget, tol } => {
            let map = LineMap::composite(parse_target(&target)?).map_err(config)?;
            let points = parse_points(&points)?;
            let bounds = parse_f64_list(&bounds)?;
            let result = unboundedness_scan(&map, &points, &bounds, tile_budget, tol)
                .map_err(run_err)?;
            let pass = result.all_pass();
            Ok(Outcome { text: report_json(&result), pass })
        }
    }
}
