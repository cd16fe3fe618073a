//! Command-line front end. JSON goes to stdout, CSV to `-o PATH` (or stdout).
//!
//! Exit codes: 0 holds/pass, 1 precondition, 2 fails, 3 unsupported regime, 64 usage.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::RellichError;
use crate::params::{critical_alphas, discriminant, ExtendedIndex, OperatorParams, Tolerance};
use crate::profile::Profile1D;
use crate::quadrature::QuadratureSpec;
use crate::radial::{boundary_counterexample, counterexample_ratio, default_counterexample_seed, loglog_slope};
use crate::spectral::{classify_a, classify_gamma, region_unweighted, Interval, SpectralDomain};
use crate::validity::{decide, Branch, DomainKind, HarmonicSet};
use crate::verify::{
    oned_corpus, remainder_corpus, seeded_corpus, verify_aux_remainder, verify_critical_log,
    verify_dissipativity, verify_hardy, verify_oned_inequality, verify_rellich, verify_remainder,
    VerificationReport, VerifyOptions,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

const TOL_ENV: &str = "RELLICH_TOL";
const SAMPLE_POINTS: usize = 1001;

#[derive(Debug, Parser)]
#[command(name = "rellich", version, about = "Weighted Rellich inequalities: decisions, spectra and numerical checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the inequality holds and report the best constant.
    Check(CommonArgs),
    /// Classify a spectral parameter or sample the parabola.
    Spectrum(SpectrumArgs),
    /// Evaluate a counterexample family.
    Counterexample(CounterexampleArgs),
    /// Run a numerical verification.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Minus,
    Plus,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IntervalArg {
    Halfline,
    Unit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Rellich,
    Hardy,
    Remainder,
    Critical,
    Aux,
    Oned,
    Dissipativity,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Space dimension.
    #[arg(long = "N", default_value_t = 5)]
    pub dim: u32,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub b: f64,
    /// Integrability index: a decimal number or "inf".
    #[arg(long, default_value = "2")]
    pub p: String,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// rn | ball | bounded | exterior | exterior-ball
    #[arg(long, default_value = "rn")]
    pub domain: String,
    /// all | ge:N | set:a,b | ne:a,b
    #[arg(long = "J", default_value = "all")]
    pub harmonics: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Decision tolerance; overrides RELLICH_TOL.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Spectral parameter "re" or "re,im".
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Classify for the radial operator on this interval instead of A.
    #[arg(long, value_enum)]
    pub interval: Option<IntervalArg>,
    /// Emit parabola points as CSV columns re,im,tag.
    #[arg(long)]
    pub sample: bool,
    #[arg(long, default_value_t = 5.0)]
    pub xi_max: f64,
}

#[derive(Debug, Clone, Args)]
pub struct CounterexampleArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = Mode::Minus)]
    pub mode: Mode,
    /// Harmonic degree.
    #[arg(long, default_value_t = 0)]
    pub n: u32,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub target: Target,
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = Mode::Minus)]
    pub mode: Mode,
    /// Drift coefficient for hardy, aux and oned.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub beta: f64,
    /// Positive real parameter for aux and dissipativity.
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub lambda: String,
    /// Left end of the weighted interval for oned.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    /// Exponent perturbation used when p = 1.
    #[arg(long, default_value_t = 0.5)]
    pub eps: f64,
    /// Size of random corpora.
    #[arg(long, default_value_t = 12)]
    pub count: usize,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(RellichError),
    Io(std::io::Error),
}

impl From<RellichError> for CliError {
    fn from(e: RellichError) -> Self {
        Self::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Io(_) => EXIT_USAGE,
            Self::Domain(e) => error_code(e),
        }
    }
}

/// Exit code for a library error.
pub fn error_code(e: &RellichError) -> i32 {
    match e {
        RellichError::InvalidParameter(_)
        | RellichError::CorpusOutsideSubspace { .. }
        | RellichError::InvalidGeometry(_) => EXIT_USAGE,
        RellichError::UnsupportedRegime(_) => EXIT_UNSUPPORTED,
        _ => EXIT_PRECONDITION,
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

struct Resolved {
    params: OperatorParams,
    p: ExtendedIndex,
    domain: DomainKind,
    set: HarmonicSet,
    tol: Tolerance,
}

fn resolve(common: &CommonArgs) -> CliResult<Resolved> {
    let usage = |e: RellichError| CliError::Usage(e.to_string());
    let params = OperatorParams::new(common.dim, common.c, common.b).map_err(usage)?;
    let p: ExtendedIndex = common.p.parse().map_err(usage)?;
    let domain: DomainKind = common.domain.parse().map_err(usage)?;
    let set: HarmonicSet = common.harmonics.parse().map_err(usage)?;
    let raw = match common.tol {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{TOL_ENV}='{s}' is not a number")))?,
            Err(_) => Tolerance::default().get(),
        },
    };
    let tol = Tolerance::new(raw).map_err(usage)?;
    Ok(Resolved { params, p, domain, set, tol })
}

fn require_alpha(common: &CommonArgs) -> CliResult<f64> {
    common.alpha.ok_or_else(|| CliError::Usage("--alpha is required".into()))
}

fn parse_lambda(s: &str) -> CliResult<Complex64> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| {
        t.parse::<f64>()
            .map_err(|_| CliError::Usage(format!("'{t}' is not a number in --lambda")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(CliError::Usage("--lambda takes 're' or 're,im'".into())),
    }
}

fn parse_real_lambda(s: &str) -> CliResult<f64> {
    let z = parse_lambda(s)?;
    if z.im != 0.0 {
        return Err(CliError::Usage("--lambda must be real here".into()));
    }
    Ok(z.re)
}

fn header(command: &str, common: &CommonArgs, r: &Resolved) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m.insert(
        "params".into(),
        json!({ "N": r.params.dim, "c": r.params.c, "b": r.params.b, "D": discriminant(&r.params) }),
    );
    m.insert("p".into(), json!(r.p.to_string()));
    m.insert("alpha".into(), json!(common.alpha));
    m.insert("domain".into(), json!(r.domain));
    m.insert("J".into(), json!(r.set.to_string()));
    m.insert("tolerance".into(), json!(r.tol.get()));
    m.insert("seed".into(), json!(common.seed));
    m
}

fn merge<T: Serialize>(m: &mut serde_json::Map<String, Value>, value: &T) {
    if let Value::Object(o) = serde_json::to_value(value).unwrap_or(Value::Null) {
        m.extend(o);
    }
}

fn emit_json(out: &mut dyn Write, value: &Value) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn emit_csv(out: &mut dyn Write, path: Option<&PathBuf>, body: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, body)?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn cmd_check(common: &CommonArgs, out: &mut dyn Write) -> CliResult<i32> {
    let r = resolve(common)?;
    let alpha = require_alpha(common)?;
    let verdict = decide(&r.params, r.p, alpha, r.domain, &r.set, r.tol)?;
    let degrees: Vec<u32> = (0..=r.set.max().unwrap_or(u32::MAX)).filter(|&j| r.set.contains(j)).take(5).collect();
    let crit: Vec<Value> = degrees
        .iter()
        .map(|&n| {
            let (lo, hi) = critical_alphas(&r.params, r.p, n);
            json!({ "n": n, "minus": lo, "plus": hi })
        })
        .collect();
    let mut m = header("check", common, &r);
    merge(&mut m, &verdict);
    m.insert("critical_alphas".into(), Value::Array(crit));
    emit_json(out, &Value::Object(m))?;
    Ok(if verdict.holds { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> CliResult<i32> {
    let common = &args.common;
    let r = resolve(common)?;
    let region = region_unweighted(&r.params, r.p);
    if args.sample {
        if !(args.xi_max > 0.0 && args.xi_max.is_finite()) {
            return Err(CliError::Usage("--xi-max must be positive".into()));
        }
        let mut body = String::from("re,im,tag\n");
        for i in 0..SAMPLE_POINTS {
            let xi = -args.xi_max + 2.0 * args.xi_max * i as f64 / (SAMPLE_POINTS - 1) as f64;
            let z = region.point(xi);
            body.push_str(&format!("{},{},P\n", z.re, z.im));
        }
        emit_csv(out, common.output.as_ref(), &body)?;
        if common.output.is_some() {
            let mut m = header("spectrum", common, &r);
            m.insert("rows".into(), json!(SAMPLE_POINTS));
            m.insert("region".into(), json!(region));
            emit_json(out, &Value::Object(m))?;
        }
        return Ok(EXIT_OK);
    }
    let lambda = parse_lambda(
        args.lambda
            .as_deref()
            .ok_or_else(|| CliError::Usage("--lambda is required unless --sample is given".into()))?,
    )?;
    let (classification, operator) = match args.interval {
        Some(IntervalArg::Halfline) => (classify_gamma(&r.params, r.p, Interval::HalfLine, lambda), "gamma_halfline"),
        Some(IntervalArg::Unit) => (classify_gamma(&r.params, r.p, Interval::UnitInterval, lambda), "gamma_unit"),
        None => {
            let domain = match r.domain {
                DomainKind::WholeSpace => SpectralDomain::WholeSpace,
                DomainKind::UnitBall => SpectralDomain::UnitBall,
                other => {
                    return Err(CliError::Usage(format!(
                        "spectrum supports --domain rn or ball, got {other:?}"
                    )))
                }
            };
            (classify_a(&r.params, r.p, &r.set, domain, lambda), "A")
        }
    };
    let mut m = header("spectrum", common, &r);
    m.insert("operator".into(), json!(operator));
    m.insert("lambda".into(), json!({ "re": lambda.re, "im": lambda.im }));
    m.insert("region".into(), json!(region));
    merge(&mut m, &classification);
    emit_json(out, &Value::Object(m))?;
    Ok(EXIT_OK)
}

const EPSILONS: [f64; 4] = [0.1, 0.05, 0.025, 0.0125];

fn cmd_counterexample(args: &CounterexampleArgs, out: &mut dyn Write) -> CliResult<i32> {
    let common = &args.common;
    let r = resolve(common)?;
    let quad = QuadratureSpec::default();
    let mut m = header("counterexample", common, &r);
    if args.mode == Mode::Boundary {
        let alpha = require_alpha(common)?;
        let report = boundary_counterexample(&r.params, r.p, alpha, 2000)?;
        merge(&mut m, &report);
        emit_json(out, &Value::Object(m))?;
        return Ok(EXIT_OK);
    }
    let branch = if args.mode == Mode::Minus { Branch::Minus } else { Branch::Plus };
    let phi = default_counterexample_seed();
    let mut rows = Vec::new();
    for eps in EPSILONS {
        let rep = counterexample_ratio(&r.params, r.p, args.n, branch, eps, &phi, &quad)?;
        rows.push((eps, rep.ratio));
    }
    let ratios: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let slope = loglog_slope(&EPSILONS, &ratios);
    let (lo, hi) = critical_alphas(&r.params, r.p, args.n);
    m.insert("n".into(), json!(args.n));
    m.insert("branch".into(), json!(branch));
    m.insert("critical_alpha".into(), json!(if branch == Branch::Minus { lo } else { hi }));
    m.insert("slope".into(), json!(slope));
    match common.format {
        Format::Json => {
            m.insert(
                "rows".into(),
                Value::Array(rows.iter().map(|(e, q)| json!({ "epsilon": e, "ratio": q })).collect()),
            );
            emit_json(out, &Value::Object(m))?;
        }
        Format::Csv => {
            let mut body = String::from("epsilon,ratio\n");
            for (e, q) in &rows {
                body.push_str(&format!("{e},{q}\n"));
            }
            emit_csv(out, common.output.as_ref(), &body)?;
            emit_json(out, &Value::Object(m))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    let common = &args.common;
    let r = resolve(common)?;
    let opts = VerifyOptions { tol: r.tol, ..Default::default() };
    let quad = &opts.quad;
    let report: VerificationReport = match args.target {
        Target::Rellich => {
            let alpha = require_alpha(common)?;
            let corpus = seeded_corpus(&r.set, args.count, common.seed);
            verify_rellich(&r.params, r.p, alpha, r.domain, &r.set, &corpus, &opts)?
        }
        Target::Hardy => {
            let u = Profile1D::bump(1.0, 2.0)?;
            verify_hardy(r.params.dim, r.p, args.beta, &u, &opts)?
        }
        Target::Remainder => {
            let alpha = require_alpha(common)?;
            verify_remainder(&r.params, r.p, alpha, &remainder_corpus(), quad)?
        }
        Target::Critical => {
            let (lo, hi) = critical_alphas(&r.params, r.p, args.n);
            let branch = match args.mode {
                Mode::Minus => Branch::Minus,
                Mode::Plus => Branch::Plus,
                Mode::Boundary => return Err(CliError::Usage("critical needs --mode minus|plus".into())),
            };
            let alpha = common.alpha.unwrap_or(if branch == Branch::Minus { lo } else { hi });
            verify_critical_log(&r.params, r.p, alpha, args.n, branch, args.eps, &opts)?
        }
        Target::Aux => {
            let lambda = parse_real_lambda(&args.lambda)?;
            verify_aux_remainder(args.beta, lambda, r.p, &Profile1D::bump(1.0, 3.0)?, quad)?
        }
        Target::Oned => verify_oned_inequality(args.beta, r.p, args.a, args.eps, &oned_corpus(20), quad)?,
        Target::Dissipativity => {
            let lambda = parse_real_lambda(&args.lambda)?;
            let corpus = seeded_corpus(&r.set, args.count, common.seed);
            verify_dissipativity(&r.params, r.p, lambda, &corpus, quad)?
        }
    };
    let mut m = header("verify", common, &r);
    m.insert("target".into(), json!(format!("{:?}", args.target).to_lowercase()));
    merge(&mut m, &report);
    emit_json(out, &Value::Object(m))?;
    Ok(if report.passed { EXIT_OK } else { EXIT_FAIL })
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return EXIT_OK;
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_USAGE,
                _ => EXIT_USAGE,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    let result = match &cli.command {
        Command::Check(c) => cmd_check(c, out),
        Command::Spectrum(s) => cmd_spectrum(s, out),
        Command::Counterexample(c) => cmd_counterexample(c, out),
        Command::Verify(v) => cmd_verify(v, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let code = e.code();
            let msg = match e {
                CliError::Usage(s) => format!("usage error: {s}"),
                CliError::Domain(d) => d.to_string(),
                CliError::Io(io) => format!("i/o error: {io}"),
            };
            let _ = writeln!(err, "rellich: {msg}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["rellich"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn check_ball_holds_with_classical_constant() {
        let (code, out, _) = call(&["check", "--N", "5", "--c", "0", "--b", "0", "--p", "2", "--alpha", "0", "--domain", "ball", "--J", "all"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["holds"], json!(true));
        assert!((v["best_constant"].as_f64().unwrap() - 1.25).abs() < 1e-12);
        assert_eq!(v["schema_version"], json!(1));
    }

    #[test]
    fn check_exit_codes() {
        let (code, out, _) = call(&["check", "--alpha", "3", "--domain", "ball"]);
        assert_eq!(code, 2);
        assert!(out.contains("BoundaryObstruction"));
        assert_eq!(call(&["check", "--p", "1", "--alpha", "0", "--domain", "bounded"]).0, 1);
        assert_eq!(call(&["check", "--p", "zero", "--alpha", "0"]).0, 64);
        assert_eq!(call(&["check"]).0, 64);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn negative_values_parse() {
        let (code, out, _) = call(&["check", "--c", "-1.5", "--b", "-0.5", "--alpha", "-0.25"]);
        assert!(code == 0 || code == 2, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["params"]["c"], json!(-1.5));
    }

    #[test]
    fn counterexample_refuses_complex_roots() {
        assert_eq!(call(&["counterexample", "--b", "-3", "--n", "0"]).0, 3);
    }

    #[test]
    fn lambda_parsing() {
        assert_eq!(parse_lambda("-2.5").unwrap(), Complex64::new(-2.5, 0.0));
        assert_eq!(parse_lambda("1,-3").unwrap(), Complex64::new(1.0, -3.0));
        assert!(parse_lambda("1,2,3").is_err());
        assert!(parse_real_lambda("1,2").is_err());
    }
}
