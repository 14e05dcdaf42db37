//! `spheremc`: sample point sets on spheres, evaluate energies and
//! worst-case errors, run Monte Carlo scans and fit decay rates.
//!
//! Exit status: 0 on success, 1 for usage or input errors, 2 when the
//! numerics fail (sampling, root finding, negative errors).

mod config;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sphere_qmc::closedforms::{proposition7_lhs, proposition7_limit};
use sphere_qmc::energy::{riesz_energy, RieszExponent};
use sphere_qmc::harness::{
    filter_s_grid, fit_strength, run_scan, EnsembleKind, EnsembleSpec, ScanResult, DEFAULT_TOLERANCE,
};
use sphere_qmc::sphere::{read_configuration, write_configuration};
use sphere_qmc::wce::{wce_squared, SobolevOrder};
use sphere_qmc::{Configuration, Error};

const THREADS_ENV: &str = "SPHEREQMC_THREADS";

#[derive(Parser)]
#[command(name = "spheremc", version, about = "Random point sets on spheres and their quadrature errors")]
struct Cli {
    /// Worker threads for scans (overrides SPHEREQMC_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// File of `key = value` lines used as defaults for flags.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw one configuration and write it as CSV.
    #[command(args_override_self = true)]
    Sample(SampleArgs),
    /// Squared worst-case error of a configuration in H^s.
    #[command(args_override_self = true)]
    Wce(PointsArgs),
    /// Riesz s-energy of a configuration (s = 0: logarithmic).
    #[command(args_override_self = true)]
    Energy(PointsArgs),
    /// Closed-form expected error or energy of an ensemble.
    #[command(args_override_self = true)]
    Expected(ExpectedArgs),
    /// Monte Carlo means of wce^2 over an (N, s) grid.
    #[command(args_override_self = true)]
    Scan(ScanArgs),
    /// Fit decay rates to a scan and estimate the strength.
    #[command(args_override_self = true)]
    Strength(StrengthArgs),
    /// Jacobi integrals against their Bessel-integral limit.
    #[command(args_override_self = true)]
    Prop7(Prop7Args),
}

#[derive(Args)]
struct SizeArgs {
    /// Number of points.
    #[arg(long, short = 'n')]
    n: Option<usize>,
    /// Polynomial degree (harmonic ensemble; N = dim of polynomials of degree <= L).
    #[arg(long = "L", value_name = "L")]
    degree: Option<usize>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, value_parser = parse_ensemble)]
    ensemble: EnsembleKind,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[command(flatten)]
    size: SizeArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PointsArgs {
    /// CSV with columns x0..xd.
    #[arg(long)]
    points: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    s: f64,
    #[arg(long, default_value_t = 2)]
    d: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    Wce2,
    Energy,
}

#[derive(Args)]
struct ExpectedArgs {
    #[arg(long, value_parser = parse_ensemble)]
    ensemble: EnsembleKind,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[command(flatten)]
    size: SizeArgs,
    #[arg(long, allow_hyphen_values = true)]
    s: f64,
    #[arg(long, value_enum, default_value_t = Quantity::Wce2)]
    quantity: Quantity,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_parser = parse_ensemble)]
    ensemble: EnsembleKind,
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Comma-separated sizes.
    #[arg(long, short = 'n')]
    n: Option<String>,
    /// Comma-separated degrees (harmonic ensemble).
    #[arg(long = "L", value_name = "L")]
    degree: Option<String>,
    /// Comma-separated values or start:stop:step (inclusive).
    #[arg(long)]
    s: String,
    #[arg(long, default_value_t = 100)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Record the wall-clock time in the metadata (output is then not reproducible).
    #[arg(long)]
    timestamp: bool,
}

#[derive(Args)]
struct StrengthArgs {
    /// Scan output (CSV or JSON).
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Args)]
struct Prop7Args {
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Comma-separated exponents in (-1, d).
    #[arg(long, default_value = "-0.5,0.5,1", allow_hyphen_values = true)]
    a: String,
    /// Comma-separated degrees.
    #[arg(long = "L", value_name = "L", default_value = "50,100,200")]
    degree: String,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Run(Error::Io(e))
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn parse_ensemble(s: &str) -> std::result::Result<EnsembleKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> CliResult<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(|x| x.trim())
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|e| Failure::Usage(format!("bad {what} {x:?}: {e}"))))
        .collect()
}

/// `a,b,c` or `start:stop:step` with `stop` included.
fn parse_grid(text: &str) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [single] => parse_list(single, "s value"),
        [a, b, h] => {
            let [a, b, h]: [f64; 3] = [a, b, h]
                .map(|x| x.trim().parse::<f64>().map_err(|e| format!("bad grid bound {x:?}: {e}")))
                .into_iter()
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(Failure::Usage)?
                .try_into()
                .expect("three parts");
            if h.is_nan() || h <= 0.0 || b < a {
                return Err(Failure::Usage(format!("grid {text:?} needs start <= stop and step > 0")));
            }
            let count = ((b - a) / h + 1e-9).floor() as usize;
            Ok((0..=count).map(|k| ((a + k as f64 * h) * 1e12).round() / 1e12).collect())
        }
        _ => Err(Failure::Usage(format!("cannot read grid {text:?}"))),
    }
}

fn threads(flag: Option<usize>) -> CliResult<usize> {
    let n = match flag {
        Some(n) => n,
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|e| Failure::Usage(format!("{THREADS_ENV}={v:?}: {e}")))?,
            Err(_) => std::thread::available_parallelism().map_or(1, |n| n.get()),
        },
    };
    if n == 0 {
        return Err(Failure::Usage("thread count must be >= 1".into()));
    }
    Ok(n)
}

fn output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn print_json(value: &Value) -> CliResult<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("plain JSON values"))?;
    Ok(())
}

fn size_of(spec: &EnsembleSpec, size: &SizeArgs) -> CliResult<usize> {
    let n = match (size.n, size.degree) {
        (Some(_), Some(_)) => return Err(Failure::Usage("give either --n or --L, not both".into())),
        (Some(n), None) => n,
        (None, Some(l)) if spec.kind() == EnsembleKind::Harmonic => spec.harmonic_size(l)?,
        (None, Some(_)) => return Err(Failure::Usage("--L applies to the harmonic ensemble only".into())),
        (None, None) => return Err(Failure::Usage("missing --n (or --L for the harmonic ensemble)".into())),
    };
    spec.validate_size(n).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(n)
}

fn spec_for(kind: EnsembleKind, d: usize, seed: u64) -> CliResult<EnsembleSpec> {
    EnsembleSpec::new(kind, d, seed).map_err(|e| Failure::Usage(e.to_string()))
}

fn load_points(path: &Path, d: usize) -> CliResult<Configuration> {
    let label = path.file_stem().map_or("points".into(), |s| s.to_string_lossy().into_owned());
    let cfg = read_configuration(BufReader::new(File::open(path)?), label)?;
    if cfg.d() != d {
        return Err(Failure::Usage(format!(
            "{} holds points on S^{}, but --d is {d}",
            path.display(),
            cfg.d()
        )));
    }
    Ok(cfg)
}

fn cmd_sample(a: SampleArgs) -> CliResult<()> {
    let spec = spec_for(a.ensemble, a.d, a.seed)?;
    let n = size_of(&spec, &a.size)?;
    let cfg = spec.sample(n, 0)?;
    let mut out = output(a.out.as_deref())?;
    write_configuration(&cfg, &mut out)?;
    out.flush()?;
    Ok(())
}

fn cmd_wce(a: PointsArgs) -> CliResult<()> {
    let cfg = load_points(&a.points, a.d)?;
    let order = SobolevOrder::new(a.d, a.s).map_err(|e| Failure::Usage(e.to_string()))?;
    let w2 = wce_squared(&cfg, order)?;
    print_json(&json!({ "wce2": w2, "wce": w2.sqrt(), "s": a.s, "N": cfg.len() }))
}

fn cmd_energy(a: PointsArgs) -> CliResult<()> {
    let cfg = load_points(&a.points, a.d)?;
    let s = RieszExponent::new(a.s).map_err(|e| Failure::Usage(e.to_string()))?;
    let e = riesz_energy(&cfg, s)?;
    print_json(&json!({ "energy": e, "s": a.s, "N": cfg.len() }))
}

fn cmd_expected(a: ExpectedArgs) -> CliResult<()> {
    let spec = spec_for(a.ensemble, a.d, 0)?;
    let n = size_of(&spec, &a.size)?;
    let (name, value) = match a.quantity {
        Quantity::Wce2 => ("wce2", spec.expected_wce2(n, a.s)?),
        Quantity::Energy => ("energy", spec.expected_energy(n, a.s)?),
    };
    let mut body = json!({
        "ensemble": a.ensemble.name(),
        "d": a.d,
        "N": n,
        "s": a.s,
        "quantity": name,
    });
    if let (Value::Object(m), Value::Object(v)) = (&mut body, serde_json::to_value(&value).expect("serializable")) {
        m.extend(v);
    }
    print_json(&body)
}

fn cmd_scan(a: ScanArgs, threads: usize) -> CliResult<bool> {
    let spec = spec_for(a.ensemble, a.d, a.seed)?;
    let sizes: Vec<usize> = match (&a.n, &a.degree) {
        (Some(_), Some(_)) => return Err(Failure::Usage("give either --n or --L, not both".into())),
        (Some(list), None) => parse_list(list, "N")?,
        (None, Some(list)) if spec.kind() == EnsembleKind::Harmonic => parse_list::<usize>(list, "L")?
            .into_iter()
            .map(|l| spec.harmonic_size(l))
            .collect::<sphere_qmc::Result<_>>()?,
        (None, Some(_)) => return Err(Failure::Usage("--L applies to the harmonic ensemble only".into())),
        (None, None) => return Err(Failure::Usage("missing --n (or --L for the harmonic ensemble)".into())),
    };
    if sizes.is_empty() {
        return Err(Failure::Usage("empty size list".into()));
    }
    for &n in &sizes {
        spec.validate_size(n).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let grid = parse_grid(&a.s)?;
    let (orders, _, invalid) = filter_s_grid(a.d, &grid);
    if let Some((s, reason)) = invalid.first() {
        return Err(Failure::Usage(format!("s = {s}: {reason}")));
    }
    if orders.is_empty() {
        return Err(Failure::Usage("no usable s values left in the grid".into()));
    }

    let mut result = run_scan(&spec, &sizes, &grid, a.reps, threads).map_err(|e| match e {
        Error::Input(m) => Failure::Usage(m),
        e => Failure::Run(e),
    })?;
    if a.timestamp {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        result.metadata.timestamp = Some(format!("unix:{secs}"));
    }
    let mut out = output(a.out.as_deref())?;
    match a.format {
        TableFormat::Csv => result.write_csv(&mut out)?,
        TableFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&result).expect("serializable"))?,
    }
    out.flush()?;
    for f in &result.failures {
        eprintln!("failed: N = {} s = {:?}: {}", f.n, f.s, f.reason);
    }
    Ok(result.failures.is_empty())
}

fn read_scan(path: &Path) -> CliResult<ScanResult> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    if text.trim_start().starts_with('{') {
        serde_json::from_str(&text).map_err(|e| Failure::Run(Error::Input(format!("{}: {e}", path.display()))))
    } else {
        Ok(ScanResult::read_csv(text.as_bytes())?)
    }
}

fn cmd_strength(a: StrengthArgs) -> CliResult<()> {
    let scan = read_scan(&a.input)?;
    let fit = fit_strength(&scan, a.d, a.tol)?;
    match a.format {
        ReportFormat::Text => {
            print!("{}", fit.report());
            Ok(())
        }
        ReportFormat::Json => print_json(&serde_json::to_value(&fit).expect("serializable")),
    }
}

fn cmd_prop7(a: Prop7Args) -> CliResult<()> {
    let exponents: Vec<f64> = parse_list(&a.a, "a")?;
    let degrees: Vec<usize> = parse_list(&a.degree, "L")?;
    let mut rows = Vec::new();
    for &x in &exponents {
        let limit = proposition7_limit(a.d, x).map_err(|e| Failure::Usage(e.to_string()))?;
        for &l in &degrees {
            let lhs = proposition7_lhs(a.d, x, l).map_err(|e| Failure::Usage(e.to_string()))?;
            rows.push((x, l, lhs, limit));
        }
    }
    match a.format {
        ReportFormat::Text => {
            let mut out = io::stdout().lock();
            writeln!(out, "{:>8} {:>6} {:>16} {:>16} {:>10}", "a", "L", "lhs", "limit", "rel")?;
            for (x, l, lhs, limit) in rows {
                writeln!(out, "{x:>8} {l:>6} {lhs:>16.10} {limit:>16.10} {:>+10.5}", (lhs - limit) / limit)?;
            }
            Ok(())
        }
        ReportFormat::Json => print_json(&Value::Array(
            rows.into_iter()
                .map(|(x, l, lhs, limit)| json!({ "d": a.d, "a": x, "L": l, "lhs": lhs, "limit": limit }))
                .collect(),
        )),
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    let threads = threads(cli.threads)?;
    match cli.command {
        Command::Sample(a) => cmd_sample(a).map(|_| true),
        Command::Wce(a) => cmd_wce(a).map(|_| true),
        Command::Energy(a) => cmd_energy(a).map(|_| true),
        Command::Expected(a) => cmd_expected(a).map(|_| true),
        Command::Scan(a) => cmd_scan(a, threads),
        Command::Strength(a) => cmd_strength(a).map(|_| true),
        Command::Prop7(a) => cmd_prop7(a).map(|_| true),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = match config::expand(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 2 } else { 1 })
        }
    }
}
