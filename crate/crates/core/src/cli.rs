//! The `vicious` command line.
//!
//! Every invocation prints one report, `{command, config, result, verdict?}`
//! as JSON (or a CSV table for coefficient tables and q-sweeps). Exit status
//! is 0 when the report holds, 1 when an identity or tolerance check fails,
//! and 2 for usage, parameter and budget errors.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rand::seq::index::sample;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::decimal::Rational;
use crate::enumeration::{
    forrester_check, rsk_chain_check, syt_count, u_count, z_count, z_ground, GroundStateQuery,
    WalkCountQuery,
};
use crate::lattice::{Configuration, WeylLattice, YoungDiagram};
use crate::operators::{commutator_residual, refined_count, StateVector, StepWord};
use crate::rmt::{
    asymptotic_ratio_report, default_kernel_grid, exact_trace_moment, gaussian_limit_report,
    hall_product_mc, kernel_convergence_report, mc_trace_moment, neretin_ks_check,
    sz_disc_integral, two_sided_agreement, McConfig,
};
use crate::series::{
    determinantal_report, gd_from_counts, gessel_report, ground_offsets, toeplitz_report,
    toeplitz_bessel_det, walk_offsets, CoefficientRow, RationalSeries,
};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_611;
pub const DEFAULT_SAMPLES: usize = 100_000;
pub const DEFAULT_COMMUTE_CONFIGS: usize = 1000;

const MAX_D: usize = 8;
const MAX_STEPS: usize = 400;
const MAX_ORDER: usize = 40;
const MAX_Q: usize = 1024;
const MAX_SAMPLES: usize = 100_000_000;
const MAX_WORKERS: usize = 256;

#[derive(Debug, Parser)]
#[command(name = "vicious", version, about = "Vicious walkers, Bessel determinants and truncated unitaries")]
struct Cli {
    #[command(subcommand)]
    group: Group,
}

#[derive(Debug, Subcommand)]
enum Group {
    /// Exact walk and tableau counts
    #[command(subcommand)]
    Exact(ExactCmd),
    /// Truncated exponential generating series
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Exact identity checks
    #[command(subcommand)]
    Check(CheckCmd),
    /// Monte Carlo over Haar unitaries
    #[command(subcommand)]
    Mc(McCmd),
    /// Correlation kernels
    #[command(subcommand)]
    Kernel(KernelCmd),
    /// Density of truncated unitaries
    #[command(subcommand)]
    Density(DensityCmd),
    /// Large-q asymptotics
    #[command(subcommand)]
    Asymp(AsympCmd),
}

#[derive(Debug, Subcommand)]
enum ExactCmd {
    /// Z_d(N; q), or Z_d(N; from, to) with --from/--to
    Z(Params),
    /// Walks from --from to --to with signature --word
    Refined(Params),
    /// u_d(n)
    Udn(Params),
    /// Standard Young tableaux of --shape
    Syt(Params),
}

#[derive(Debug, Subcommand)]
enum SeriesCmd {
    /// G_d(x; q) from walk counts
    Gd(Params),
    /// det(I_{offsets}(2x)) from --offsets, --mu/--lambda or --d/--q
    Det(Params),
}

#[derive(Debug, Subcommand)]
enum CheckCmd {
    /// Walk counts against the Toeplitz Bessel determinant, orders 0..=--order
    Toeplitz(Params),
    /// Z_d(2m; 0) = C(2m, m) u_d(m) for m <= --n
    Forrester(Params),
    /// Gessel's identity for the generating series of u_d(n)
    Gessel(Params),
    /// LR = RL on random configurations, --samples of them
    Commute(Params),
    /// Refined walk series from --mu to --lambda against det(I_{lambda_i - mu_j}(2x))
    Determinantal(Params),
    /// C(2n+dq, n) times refined L^n R^{n+dq} walks against Z_d(2n+dq; q)
    RskChain(Params),
}

#[derive(Debug, Subcommand)]
enum McCmd {
    /// E|Tr P|^{2n} for truncated Haar unitaries against exact counts
    Moments(Params),
    /// Unitary side of the Wei-Wettig identity against the walk side at --x
    Weiwettig(Params),
    /// E s_lambda(P) conj(s_mu(P)) against the Kronecker delta
    Hall(Params),
    /// q^n E|Tr P|^{2n} against d^n n! over --qs
    GaussianLimit(Params),
}

#[derive(Debug, Subcommand)]
enum KernelCmd {
    /// Sup error between the scaled SZ kernel and the Ginibre kernel
    Compare(Params),
}

#[derive(Debug, Subcommand)]
enum DensityCmd {
    /// KS distance of sampled |P| against the Neretin radial law (d = 1)
    Check(Params),
}

#[derive(Debug, Subcommand)]
enum AsympCmd {
    /// Exact Z_d(2n+dq; q) against the large-q asymptotic formula
    Ratio(Params),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

/// Resolved run configuration, echoed in every report.
#[derive(Debug, Clone, Args, Serialize)]
struct Params {
    /// Number of walkers / matrix size
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    /// Number of steps
    #[arg(long = "N")]
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
    /// Truncation order of series
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<PathBuf>,
    /// Step word over L and R, applied right to left
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    word: Option<String>,
    /// Configuration, comma separated, e.g. 3,1
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    from: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    to: Option<String>,
    /// Young diagram rows, comma separated
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    shape: Option<String>,
    /// Bessel index matrix, rows separated by ';', e.g. "0,1;-1,0"
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    offsets: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<String>,
    /// List of q values, comma separated
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    qs: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<f64>,
    /// Tolerance: standard errors for Monte Carlo, absolute otherwise
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    tol: Option<f64>,
}

#[derive(Debug, Serialize)]
struct Verdict {
    holds: bool,
    criterion: String,
}

struct Outcome {
    result: Value,
    verdict: Option<Verdict>,
    table: Option<Table>,
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Outcome {
    fn new(result: impl Serialize) -> Result<Self, String> {
        Ok(Self {
            result: serde_json::to_value(result).map_err(|e| e.to_string())?,
            verdict: None,
            table: None,
        })
    }

    fn verdict(mut self, holds: bool, criterion: impl Into<String>) -> Self {
        self.verdict = Some(Verdict {
            holds,
            criterion: criterion.into(),
        });
        self
    }

    fn table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some(Table { header, rows });
        self
    }
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (program name first) and returns what it
/// would print. Nothing is written except the `--out` file.
pub fn run(args: &[String]) -> Invocation {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Invocation { code, stdout: text, stderr: String::new() }
            } else {
                Invocation { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let (name, mut params) = command_of(cli.group);
    let outcome = match dispatch(name, &mut params) {
        Ok(o) => o,
        Err(msg) => return usage(format!("{name}: {msg}")),
    };
    let body = match render(name, &params, outcome.result, &outcome.verdict, outcome.table) {
        Ok(b) => b,
        Err(msg) => return usage(format!("{name}: {msg}")),
    };
    let code = match &outcome.verdict {
        Some(v) if !v.holds => 1,
        _ => 0,
    };
    match &params.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Invocation { code, stdout: String::new(), stderr: String::new() },
            Err(e) => usage(format!("cannot write {}: {e}", path.display())),
        },
        None => Invocation { code, stdout: body, stderr: String::new() },
    }
}

/// Entry point for the binary: runs `args` and prints the output.
pub fn main_with_args(args: &[String]) -> i32 {
    let inv = run(args);
    print!("{}", inv.stdout);
    eprint!("{}", inv.stderr);
    inv.code
}

fn usage(msg: String) -> Invocation {
    Invocation {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {msg}\n"),
    }
}

fn command_of(group: Group) -> (&'static str, Params) {
    match group {
        Group::Exact(c) => match c {
            ExactCmd::Z(p) => ("exact z", p),
            ExactCmd::Refined(p) => ("exact refined", p),
            ExactCmd::Udn(p) => ("exact udn", p),
            ExactCmd::Syt(p) => ("exact syt", p),
        },
        Group::Series(c) => match c {
            SeriesCmd::Gd(p) => ("series gd", p),
            SeriesCmd::Det(p) => ("series det", p),
        },
        Group::Check(c) => match c {
            CheckCmd::Toeplitz(p) => ("check toeplitz", p),
            CheckCmd::Forrester(p) => ("check forrester", p),
            CheckCmd::Gessel(p) => ("check gessel", p),
            CheckCmd::Commute(p) => ("check commute", p),
            CheckCmd::Determinantal(p) => ("check determinantal", p),
            CheckCmd::RskChain(p) => ("check rsk-chain", p),
        },
        Group::Mc(c) => match c {
            McCmd::Moments(p) => ("mc moments", p),
            McCmd::Weiwettig(p) => ("mc weiwettig", p),
            McCmd::Hall(p) => ("mc hall", p),
            McCmd::GaussianLimit(p) => ("mc gaussian-limit", p),
        },
        Group::Kernel(KernelCmd::Compare(p)) => ("kernel compare", p),
        Group::Density(DensityCmd::Check(p)) => ("density check", p),
        Group::Asymp(AsympCmd::Ratio(p)) => ("asymp ratio", p),
    }
}

fn dispatch(name: &str, p: &mut Params) -> Result<Outcome, String> {
    let csv_ok = matches!(
        name,
        "series gd"
            | "series det"
            | "check toeplitz"
            | "check gessel"
            | "mc gaussian-limit"
            | "kernel compare"
    );
    if p.format == Format::Csv && !csv_ok {
        return Err("CSV output is only available for coefficient tables and q-sweeps".into());
    }
    bounded("workers", p.workers, MAX_WORKERS)?;
    if p.workers == 0 {
        return Err("--workers must be at least 1".into());
    }
    match name {
        "exact z" => exact_z(p),
        "exact refined" => exact_refined(p),
        "exact udn" => {
            let (d, n) = (need_d(p)?, need(p.n, "n")?);
            Outcome::new(json!({ "value": u_count(d, n).map_err(err)?.to_string() }))
        }
        "exact syt" => {
            let y = diagram(need_str(&p.shape, "shape")?)?;
            Outcome::new(json!({ "value": syt_count(&y).to_string() }))
        }
        "series gd" => {
            let (d, q, order) = (need_d(p)?, need_q(p)?, need_order(p)?);
            series_outcome(&gd_from_counts(d, q, order))
        }
        "series det" => series_det(p),
        "check toeplitz" => {
            let (d, q, order) = (need_d(p)?, need_q(p)?, need_order(p)?);
            let r = toeplitz_report(d, q, order).map_err(err)?;
            let rows = coefficient_rows(&r.rows);
            Ok(Outcome::new(&r)?
                .verdict(r.holds, "N! [x^N] det(I_{q+j-i}(2x)) = Z_d(N; q) for all N <= order")
                .table(vec!["N", "count", "determinant", "equal"], rows))
        }
        "check forrester" => {
            let (d, n) = (need_d(p)?, need(p.n, "n")?);
            let rows = (0..=n)
                .map(|m| forrester_check(d, m))
                .collect::<crate::Result<Vec<_>>>()
                .map_err(err)?;
            let holds = rows.iter().all(|r| r.holds);
            Ok(Outcome::new(json!({ "rows": rows }))?
                .verdict(holds, "Z_d(2m; 0) = C(2m, m) u_d(m) and Z_d(2m+1; 0) = 0 for m <= n"))
        }
        "check gessel" => {
            let (d, order) = (need_d(p)?, need_order(p)?);
            let r = gessel_report(d, order).map_err(err)?;
            let rows = coefficient_rows(&r.rows);
            Ok(Outcome::new(&r)?
                .verdict(r.holds, "n! n! [x^{2n}] det(I_{i-j}(2x)) = u_d(n)")
                .table(vec!["power", "count", "determinant", "equal"], rows))
        }
        "check commute" => check_commute(p),
        "check determinantal" => {
            let mu = configuration(need_str(&p.mu, "mu")?)?;
            let lambda = configuration(need_str(&p.lambda, "lambda")?)?;
            let r = determinantal_report(&mu, &lambda, need_order(p)?).map_err(err)?;
            Ok(Outcome::new(&r)?.verdict(
                r.holds,
                "refined walk series = det(I_{lambda_i - mu_j}(2x)) for both word families",
            ))
        }
        "check rsk-chain" => {
            let (d, n, q) = (need_d(p)?, need(p.n, "n")?, need_q(p)?);
            bounded("2n + dq", 2 * n + d * q, MAX_STEPS)?;
            let r = rsk_chain_check(d, n, q).map_err(err)?;
            Ok(Outcome::new(&r)?.verdict(r.holds, "refined(L^n R^{n+dq}) C(2n+dq, n) = Z_d(2n+dq; q)"))
        }
        "mc moments" => mc_moments(p),
        "mc weiwettig" => {
            let (d, q) = (need_d(p)?, need_q(p)?);
            let x = p.x.ok_or("missing --x")?;
            let k = *p.tol.get_or_insert(4.0);
            let cfg = mc_config(p)?;
            let r = two_sided_agreement(d, q, x, &cfg, k).map_err(err)?;
            Ok(Outcome::new(r)?.verdict(r.agree, format!("both sides agree within {k} combined SE")))
        }
        "mc hall" => mc_hall(p),
        "mc gaussian-limit" => mc_gaussian_limit(p),
        "kernel compare" => kernel_compare(p),
        "density check" => {
            let q = need_q(p)?;
            let tol = *p.tol.get_or_insert(0.01);
            let cfg = mc_config(p)?;
            let r = neretin_ks_check(q, &cfg).map_err(err)?;
            Ok(Outcome::new(&r)?
                .verdict(r.ks_distance < tol, format!("KS distance below {tol} for d = 1")))
        }
        "asymp ratio" => {
            let (d, n, q) = (need_d(p)?, need(p.n, "n")?, need_q(p)?);
            bounded("2n + dq", 2 * n + d * q, MAX_STEPS)?;
            let r = asymptotic_ratio_report(d, n, q).map_err(err)?;
            let out = Outcome::new(&r)?;
            Ok(match p.tol {
                Some(tol) => out.verdict(
                    (r.adjusted_ratio - 1.0).abs() <= tol,
                    format!("n!-adjusted ratio within {tol} of 1"),
                ),
                None => out,
            })
        }
        other => Err(format!("unknown command {other}")),
    }
}

fn render(
    name: &str,
    p: &Params,
    result: Value,
    verdict: &Option<Verdict>,
    table: Option<Table>,
) -> Result<String, String> {
    if p.format == Format::Csv {
        let table = table.ok_or("this command has no table")?;
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&table.header).map_err(|e| e.to_string())?;
        for row in &table.rows {
            w.write_record(row).map_err(|e| e.to_string())?;
        }
        let bytes = w.into_inner().map_err(|e| e.to_string())?;
        return String::from_utf8(bytes).map_err(|e| e.to_string());
    }
    let mut doc = json!({ "command": name, "config": p, "result": result });
    if let Some(v) = verdict {
        doc["verdict"] = serde_json::to_value(v).map_err(|e| e.to_string())?;
    }
    let mut s = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
    s.push('\n');
    Ok(s)
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn bounded(name: &str, value: usize, bound: usize) -> Result<usize, String> {
    if value > bound {
        return Err(format!("{name} = {value} exceeds the budget {bound}"));
    }
    Ok(value)
}

fn need(v: Option<usize>, name: &str) -> Result<usize, String> {
    v.ok_or_else(|| format!("missing --{name}"))
}

fn need_str<'a>(v: &'a Option<String>, name: &str) -> Result<&'a str, String> {
    v.as_deref().ok_or_else(|| format!("missing --{name}"))
}

fn need_d(p: &Params) -> Result<usize, String> {
    let d = bounded("d", need(p.d, "d")?, MAX_D)?;
    if d == 0 {
        return Err("--d must be at least 1".into());
    }
    Ok(d)
}

fn need_q(p: &Params) -> Result<usize, String> {
    bounded("q", need(p.q, "q")?, MAX_Q)
}

fn need_order(p: &Params) -> Result<usize, String> {
    bounded("order", need(p.order, "order")?, MAX_ORDER)
}

fn mc_config(p: &mut Params) -> Result<McConfig, String> {
    let samples = bounded("samples", *p.samples.get_or_insert(DEFAULT_SAMPLES), MAX_SAMPLES)?;
    Ok(McConfig::new(samples, p.seed).with_workers(p.workers))
}

fn ints(s: &str) -> Result<Vec<i64>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad integer {t:?}: {e}")))
        .collect()
}

fn configuration(s: &str) -> Result<Configuration, String> {
    let c = Configuration::new(ints(s)?).map_err(err)?;
    bounded("d", c.dim(), MAX_D)?;
    Ok(c)
}

fn diagram(s: &str) -> Result<YoungDiagram, String> {
    let rows = ints(s)?
        .into_iter()
        .map(|x| u32::try_from(x).map_err(|_| format!("bad row length {x}")))
        .collect::<Result<Vec<_>, _>>()?;
    YoungDiagram::new(rows).map_err(err)
}

fn q_list(p: &mut Params, default: &str) -> Result<Vec<usize>, String> {
    let raw = p.qs.get_or_insert_with(|| default.to_string()).clone();
    let qs = ints(&raw)?
        .into_iter()
        .map(|x| usize::try_from(x).map_err(|_| format!("bad q {x}")))
        .collect::<Result<Vec<_>, _>>()?;
    for &q in &qs {
        bounded("q", q, MAX_Q)?;
    }
    if qs.is_empty() {
        return Err("--qs is empty".into());
    }
    Ok(qs)
}

fn coefficient_rows(rows: &[CoefficientRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| vec![r.power.to_string(), r.count.clone(), r.determinant.clone(), r.equal.to_string()])
        .collect()
}

fn series_outcome(s: &RationalSeries) -> Result<Outcome, String> {
    let rows = s
        .coefficients()
        .iter()
        .enumerate()
        .map(|(k, c)| vec![k.to_string(), c.numer().to_string(), c.denom().to_string()])
        .collect();
    Ok(Outcome::new(s)?.table(vec!["power", "num", "den"], rows))
}

fn exact_z(p: &mut Params) -> Result<Outcome, String> {
    let steps = bounded("N", need(p.steps, "N")?, MAX_STEPS)?;
    let value = match (&p.from, &p.to) {
        (Some(from), Some(to)) => {
            let query = WalkCountQuery::new(steps, configuration(from)?, configuration(to)?)
                .map_err(err)?;
            z_count(&query)
        }
        (None, None) => z_ground(&GroundStateQuery {
            d: need_d(p)?,
            steps,
            q: need_q(p)?,
        }),
        _ => return Err("--from and --to must be given together".into()),
    };
    Outcome::new(json!({ "value": value.to_string() }))
}

fn exact_refined(p: &mut Params) -> Result<Outcome, String> {
    let word: StepWord = need_str(&p.word, "word")?.parse().map_err(err)?;
    bounded("word length", word.len(), MAX_STEPS)?;
    let from = configuration(need_str(&p.from, "from")?)?;
    let to = configuration(need_str(&p.to, "to")?)?;
    let lattice = WeylLattice { d: from.dim() };
    let value = refined_count(&lattice, &word, &from, &to).map_err(err)?;
    Outcome::new(json!({ "value": value.to_string(), "word": word.to_string() }))
}

fn series_det(p: &mut Params) -> Result<Outcome, String> {
    let order = need_order(p)?;
    let offsets = if let Some(raw) = &p.offsets {
        raw.split(';').map(ints).collect::<Result<Vec<_>, _>>()?
    } else if let (Some(mu), Some(lambda)) = (&p.mu, &p.lambda) {
        walk_offsets(&configuration(mu)?, &configuration(lambda)?)
    } else {
        ground_offsets(need_d(p)?, need_q(p)? as i64)
    };
    bounded("matrix size", offsets.len(), MAX_D)?;
    series_outcome(&toeplitz_bessel_det(&offsets, order).map_err(err)?)
}

fn random_configuration(d: usize, rng: &mut ChaCha8Rng) -> Configuration {
    // d distinct sites out of a window of width 2d + 8 around the origin
    let width = 2 * d + 8;
    let mut parts: Vec<i64> = sample(rng, width, d)
        .into_iter()
        .map(|i| i as i64 - (width / 2) as i64)
        .collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Configuration::new(parts).expect("distinct sorted sites")
}

fn check_commute(p: &mut Params) -> Result<Outcome, String> {
    let d = need_d(p)?;
    let count = bounded("samples", *p.samples.get_or_insert(DEFAULT_COMMUTE_CONFIGS), MAX_SAMPLES)?;
    let lattice = WeylLattice { d };
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut failures = Vec::new();
    for _ in 0..count {
        let c = random_configuration(d, &mut rng);
        let residual = commutator_residual(&lattice, &StateVector::unit(c.clone()));
        if !residual.is_zero() && failures.len() < 10 {
            failures.push(json!({ "configuration": c, "residual": residual.to_string() }));
        }
    }
    let holds = failures.is_empty();
    Outcome::new(json!({ "configurations": count, "failures": failures }))
        .map(|o| o.verdict(holds, "(LR - RL) v = 0 on every sampled configuration"))
}

fn mc_moments(p: &mut Params) -> Result<Outcome, String> {
    let (d, q, n) = (need_d(p)?, need_q(p)?, need(p.n, "n")?);
    bounded("2n + dq", 2 * n + d * q, MAX_STEPS)?;
    let k = *p.tol.get_or_insert(4.0);
    let cfg = mc_config(p)?;
    let exact = exact_trace_moment(d, q, n).map_err(err)?;
    let exact_f = exact.to_f64().unwrap_or(f64::NAN);
    let estimate = mc_trace_moment(d, q, n, &cfg).map_err(err)?;
    let holds = estimate.within(exact_f, k);
    Ok(Outcome::new(json!({
        "exact": Rational(&exact),
        "exact_f64": exact_f,
        "estimate": estimate,
    }))?
    .verdict(holds, format!("estimate within {k} SE of the exact moment")))
}

fn mc_hall(p: &mut Params) -> Result<Outcome, String> {
    let d = need_d(p)?;
    let lambda = diagram(need_str(&p.lambda, "lambda")?)?;
    let mu = diagram(need_str(&p.mu, "mu")?)?;
    let k = *p.tol.get_or_insert(4.0);
    let cfg = mc_config(p)?;
    let est = hall_product_mc(&lambda, &mu, d, &cfg).map_err(err)?;
    let expected = if lambda == mu { 1.0 } else { 0.0 };
    let z = est.complex();
    // the imaginary part is rounding noise when the product is real sample by sample
    let holds = est.within(expected, k) && z.im.abs() <= k * est.imag_error() + 1e-12;
    Ok(Outcome::new(json!({ "expected": expected, "estimate": est }))?
        .verdict(holds, format!("<s_lambda|s_mu> within {k} SE of delta")))
}

fn mc_gaussian_limit(p: &mut Params) -> Result<Outcome, String> {
    let (d, n) = (need_d(p)?, need(p.n, "n")?);
    let qs = q_list(p, "4,16,64")?;
    let cfg = mc_config(p)?;
    let r = gaussian_limit_report(d, n, &qs, &cfg).map_err(err)?;
    let rows = r
        .rows
        .iter()
        .map(|row| {
            vec![
                row.q.to_string(),
                row.scaled_estimate.to_string(),
                row.scaled_stderr.to_string(),
                row.deviation.to_string(),
                row.exact_scaled.map(|x| x.to_string()).unwrap_or_default(),
            ]
        })
        .collect();
    Ok(Outcome::new(&r)?
        .verdict(r.shrinking, "deviation from d^n n! shrinks along q within 4 combined SE")
        .table(vec!["q", "scaled_estimate", "scaled_stderr", "deviation", "exact_scaled"], rows))
}

fn kernel_compare(p: &mut Params) -> Result<Outcome, String> {
    let d = need_d(p)?;
    let qs = q_list(p, "16,64,256")?;
    if qs.contains(&0) {
        return Err("kernel q values must be at least 1".into());
    }
    let grid = default_kernel_grid(1.0, 5, 8);
    let r = kernel_convergence_report(d, &qs, &grid).map_err(err)?;
    let integrals = qs
        .iter()
        .map(|&q| sz_disc_integral(d, q))
        .collect::<crate::Result<Vec<_>>>()
        .map_err(err)?;
    let integrals_ok = integrals.iter().all(|v| (v - d as f64).abs() < 1e-3);
    let rows = r
        .rows
        .iter()
        .zip(&integrals)
        .map(|(row, int)| {
            vec![
                row.q.to_string(),
                row.sup_error.to_string(),
                row.sup_error_as_printed.to_string(),
                row.pairs.to_string(),
                int.to_string(),
            ]
        })
        .collect();
    let holds = r.strictly_decreasing && r.origin_exact && integrals_ok;
    Ok(Outcome::new(json!({
        "grid": { "radius": 1.0, "rings": 5, "spokes": 8, "points": grid.len() },
        "report": r,
        "disc_integrals": integrals,
    }))?
    .verdict(
        holds,
        "sup error strictly decreasing, 1/pi at the origin, disc integral = d within 1e-3",
    )
    .table(vec!["q", "sup_error", "sup_error_as_printed", "pairs", "disc_integral"], rows))
}
