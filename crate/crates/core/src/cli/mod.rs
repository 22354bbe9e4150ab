//! The `rgt` command line: `compute`, `sweep`, `jump`, `verify`.
//!
//! Exit codes: 0 ok, 1 usage, 2 domain/pole/depth, 3 convergence or unstable
//! extrapolation, 4 some sweep rows failed, 5 verification failed.

mod config;
mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::Error;
use crate::gamma::GammaParameter;
use crate::identities::{run_suite, Suite, GRID_SEED};
use crate::quad::QuadratureSpec;
use crate::transform::{jump_estimate, MethodTag, TransformRequest, DEFAULT_DELTAS};

pub use config::{parse_config, ConfigFile};
pub use output::{Row, CSV_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;
pub const EXIT_PARTIAL: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

/// Env var naming a config file when `--config` is absent.
pub const CONFIG_ENV: &str = "RGT_CONFIG";

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Pole { .. } | Error::Domain(_) | Error::DepthExceeded { .. } => EXIT_DOMAIN,
        Error::NonConvergence { .. } | Error::ExtrapolationUnstable(_) => EXIT_CONVERGENCE,
    }
}

/// Short status tag for a failed row.
pub fn status_tag(e: &Error) -> &'static str {
    match e {
        Error::Pole { .. } => "pole",
        Error::Domain(_) => "domain",
        Error::DepthExceeded { .. } => "depth",
        Error::NonConvergence { .. } => "nonconvergence",
        Error::ExtrapolationUnstable(_) => "unstable",
    }
}

/// Parses `RE`, `IMi`, `RE+IMi`, `RE-IMi` (scientific notation allowed in
/// either part; a bare `i` means one).
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s = s.trim();
    let bad = || format!("invalid complex literal `{s}`");
    let num = |t: &str| -> Result<f64, String> {
        let v = match t {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => t.parse::<f64>().map_err(|_| bad())?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        let re = s.parse::<f64>().map_err(|_| bad())?;
        return if re.is_finite() { Ok(Complex64::new(re, 0.0)) } else { Err(bad()) };
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re_part = &body[..k];
            if re_part.is_empty() {
                return Err(bad());
            }
            let re = re_part.parse::<f64>().map_err(|_| bad())?;
            if !re.is_finite() {
                return Err(bad());
            }
            Ok(Complex64::new(re, num(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, num(body)?)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "rgt", version, about = "Fourier transforms of Γ(a+it)Γ(a−it)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate J(a, ξ) once.
    Compute(ComputeArgs),
    /// Evaluate J over a grid of a, ξ and methods.
    Sweep(SweepArgs),
    /// Estimate the jump across Re(a) = 0 and compare with the closed form (JSON).
    Jump(JumpArgs),
    /// Run a verification battery (JSON).
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Default)]
struct SpecArgs {
    /// key = value file; falls back to $RGT_CONFIG.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    abs_tol: Option<f64>,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    max_subdivisions: Option<usize>,
    #[arg(long)]
    truncation_tail_tol: Option<f64>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Omit the `seconds` column so output is reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    a: Complex64,
    #[arg(long, allow_hyphen_values = true)]
    xi: f64,
    #[arg(long, default_value = "auto", value_parser = parse_method)]
    method: MethodTag,
    #[command(flatten)]
    table: TableArgs,
    #[command(flatten)]
    spec: SpecArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Comma-separated complex parameters.
    #[arg(long, required = true, allow_hyphen_values = true, value_delimiter = ',', value_parser = parse_complex)]
    a: Vec<Complex64>,
    #[arg(long, allow_hyphen_values = true)]
    xi_lo: f64,
    #[arg(long, allow_hyphen_values = true)]
    xi_hi: f64,
    #[arg(long, default_value_t = 1)]
    xi_steps: usize,
    /// Comma-separated methods.
    #[arg(long, default_value = "auto", value_delimiter = ',', value_parser = parse_method)]
    methods: Vec<MethodTag>,
    #[arg(long)]
    parallelism: Option<usize>,
    #[command(flatten)]
    table: TableArgs,
    #[command(flatten)]
    spec: SpecArgs,
}

#[derive(Debug, Args)]
struct JumpArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    p: Complex64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    xi: f64,
    /// Comma-separated, strictly decreasing.
    #[arg(long, value_delimiter = ',')]
    deltas: Option<Vec<f64>>,
    #[command(flatten)]
    spec: SpecArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = |s: &str| s.parse::<Suite>().map_err(|e| e.to_string()))]
    suite: Suite,
    #[command(flatten)]
    spec: SpecArgs,
}

fn parse_method(s: &str) -> Result<MethodTag, String> {
    s.parse::<MethodTag>().map_err(|e| e.to_string())
}

/// Settings after layering flags over the config file over defaults.
struct Resolved {
    spec: QuadratureSpec,
    format: Format,
    no_timing: bool,
    parallelism: usize,
    out: Option<PathBuf>,
}

fn resolve(spec_args: &SpecArgs, table: Option<&TableArgs>, parallelism: Option<usize>) -> Result<Resolved, String> {
    let path = spec_args
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from));
    let file = match path {
        Some(p) => {
            let text = std::fs::read_to_string(&p).map_err(|e| format!("cannot read config {}: {e}", p.display()))?;
            parse_config(&text)?
        }
        None => ConfigFile::default(),
    };
    let d = QuadratureSpec::default();
    let spec = QuadratureSpec {
        abs_tol: spec_args.abs_tol.or(file.abs_tol).unwrap_or(d.abs_tol),
        rel_tol: spec_args.rel_tol.or(file.rel_tol).unwrap_or(d.rel_tol),
        max_subdivisions: spec_args.max_subdivisions.or(file.max_subdivisions).unwrap_or(d.max_subdivisions),
        truncation_tail_tol: spec_args
            .truncation_tail_tol
            .or(file.truncation_tail_tol)
            .unwrap_or(d.truncation_tail_tol),
        oscillation_wavenumber: 0.0,
    };
    spec.validate().map_err(|e| e.to_string())?;
    let parallelism = parallelism.or(file.parallelism).unwrap_or(1);
    if parallelism == 0 {
        return Err("parallelism must be at least 1".into());
    }
    Ok(Resolved {
        spec,
        format: table.and_then(|t| t.format).or(file.format).unwrap_or(Format::Csv),
        no_timing: table.is_some_and(|t| t.no_timing) || file.no_timing.unwrap_or(false),
        parallelism,
        out: spec_args.out.clone(),
    })
}

fn open_out(path: &Option<PathBuf>, stdout: &mut dyn Write, body: &[u8]) -> io::Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            w.write_all(body)?;
            w.flush()
        }
        None => stdout.write_all(body),
    }
}

fn evaluate_row(a: Complex64, xi: f64, method: MethodTag, spec: &QuadratureSpec) -> Row {
    let start = Instant::now();
    let result = GammaParameter::new(a).and_then(|p| TransformRequest::new(p, xi, method).with_spec(*spec).evaluate());
    Row::new(a, xi, method, result, start.elapsed().as_secs_f64())
}

fn spec_meta(spec: &QuadratureSpec) -> Value {
    json!({
        "abs_tol": output::num(spec.abs_tol),
        "rel_tol": output::num(spec.rel_tol),
        "max_subdivisions": spec.max_subdivisions,
        "truncation_tail_tol": output::num(spec.truncation_tail_tol),
    })
}

fn cmd_compute(args: &ComputeArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> io::Result<i32> {
    let r = match resolve(&args.spec, Some(&args.table), None) {
        Ok(r) => r,
        Err(msg) => {
            writeln!(stderr, "error: {msg}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let row = evaluate_row(args.a, args.xi, args.method, &r.spec);
    if let Some(e) = &row.error {
        writeln!(stderr, "error: {e}")?;
        return Ok(exit_code(e));
    }
    let meta = json!({"command": "compute", "spec": spec_meta(&r.spec)});
    let body = output::render(std::slice::from_ref(&row), r.format, !r.no_timing, meta);
    open_out(&r.out, stdout, body.as_bytes())?;
    Ok(EXIT_OK)
}

/// ξ grid with `steps` points from `lo` to `hi` inclusive.
pub fn xi_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    (0..steps)
        .map(|k| if k + 1 == steps { hi } else { lo + (hi - lo) * k as f64 / (steps - 1) as f64 })
        .collect()
}

fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> io::Result<i32> {
    let usage = |stderr: &mut dyn Write, msg: &str| -> io::Result<i32> {
        writeln!(stderr, "error: {msg}")?;
        Ok(EXIT_USAGE)
    };
    if args.methods.is_empty() {
        return usage(stderr, "the method list is empty");
    }
    if args.a.is_empty() {
        return usage(stderr, "the parameter list is empty");
    }
    if !(args.xi_lo.is_finite() && args.xi_hi.is_finite()) || args.xi_lo > args.xi_hi || args.xi_steps == 0 {
        return usage(stderr, "need finite xi-lo <= xi-hi and xi-steps >= 1");
    }
    let r = match resolve(&args.spec, Some(&args.table), args.parallelism) {
        Ok(r) => r,
        Err(msg) => return usage(stderr, &msg),
    };

    let xis = xi_grid(args.xi_lo, args.xi_hi, args.xi_steps);
    let mut jobs = Vec::with_capacity(args.a.len() * xis.len() * args.methods.len());
    for &a in &args.a {
        for &xi in &xis {
            for &m in &args.methods {
                jobs.push((a, xi, m));
            }
        }
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(r.parallelism).build() {
        Ok(p) => p,
        Err(e) => return usage(stderr, &format!("cannot start {} threads: {e}", r.parallelism)),
    };
    let spec = r.spec;
    // Indexed parallel collect keeps rows in job order.
    let rows: Vec<Row> = pool.install(|| jobs.par_iter().map(|&(a, xi, m)| evaluate_row(a, xi, m, &spec)).collect());

    let meta = json!({
        "command": "sweep",
        "spec": spec_meta(&spec),
        "xi_lo": output::num(args.xi_lo),
        "xi_hi": output::num(args.xi_hi),
        "xi_steps": args.xi_steps,
    });
    let body = output::render(&rows, r.format, !r.no_timing, meta);
    open_out(&r.out, stdout, body.as_bytes())?;
    let failed = rows.iter().filter(|row| row.error.is_some()).count();
    if failed > 0 {
        writeln!(stderr, "{failed} of {} rows failed", rows.len())?;
        return Ok(EXIT_PARTIAL);
    }
    Ok(EXIT_OK)
}

fn cmd_jump(args: &JumpArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> io::Result<i32> {
    let r = match resolve(&args.spec, None, None) {
        Ok(r) => r,
        Err(msg) => {
            writeln!(stderr, "error: {msg}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let deltas = args.deltas.clone().unwrap_or_else(|| DEFAULT_DELTAS.to_vec());
    let est = match jump_estimate(args.p, args.xi, &deltas, &r.spec) {
        Ok(est) => est,
        Err(e) => {
            writeln!(stderr, "error: {e}")?;
            return Ok(exit_code(&e));
        }
    };
    let doc = json!({
        "meta": {"command": "jump", "spec": spec_meta(&r.spec)},
        "estimate": output::jump_json(&est),
    });
    let body = serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n";
    open_out(&r.out, stdout, body.as_bytes())?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> io::Result<i32> {
    let r = match resolve(&args.spec, None, None) {
        Ok(r) => r,
        Err(msg) => {
            writeln!(stderr, "error: {msg}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let outcome = run_suite(args.suite, &r.spec);
    let pass = outcome.pass();
    let doc = json!({
        "meta": {"command": "verify", "suite": args.suite.as_str(), "seed": GRID_SEED, "spec": spec_meta(&r.spec)},
        "pass": pass,
        "reports": outcome.reports.iter().map(output::report_json).collect::<Vec<_>>(),
        "lerch": outcome.lerch.iter().map(output::lerch_json).collect::<Vec<_>>(),
    });
    let body = serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n";
    open_out(&r.out, stdout, body.as_bytes())?;
    for rep in outcome.reports.iter().filter(|rep| !rep.pass) {
        writeln!(stderr, "FAIL {}: max residual {:e} > {:e}", rep.name, rep.max_rel_residual, rep.tolerance)?;
    }
    Ok(if pass { EXIT_OK } else { EXIT_VERIFY })
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let res = match &cli.command {
        Command::Compute(a) => cmd_compute(a, stdout, stderr),
        Command::Sweep(a) => cmd_sweep(a, stdout, stderr),
        Command::Jump(a) => cmd_jump(a, stdout, stderr),
        Command::Verify(a) => cmd_verify(a, stdout, stderr),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let ok = [
            ("0.5i", (0.0, 0.5)),
            ("2", (2.0, 0.0)),
            ("-0.5+0i", (-0.5, 0.0)),
            ("1e-3-2e1i", (1e-3, -20.0)),
            ("-1.5E+2+3.25e-1i", (-150.0, 0.325)),
            ("i", (0.0, 1.0)),
            ("-i", (0.0, -1.0)),
            ("3-i", (3.0, -1.0)),
            (" 0.1+0.5i ", (0.1, 0.5)),
        ];
        for (s, (re, im)) in ok {
            assert_eq!(parse_complex(s).unwrap(), Complex64::new(re, im), "{s}");
        }
        for s in ["", "abc", "1+2", "1+2j", "inf", "1+nani", "+i+i", "1e5e5"] {
            assert!(parse_complex(s).is_err(), "{s}");
        }
    }

    #[test]
    fn grid_endpoints_exact() {
        assert_eq!(xi_grid(-1.0, 1.0, 3), vec![-1.0, 0.0, 1.0]);
        assert_eq!(xi_grid(0.3, 0.3, 1), vec![0.3]);
        let g = xi_grid(0.0, 0.7, 8);
        assert_eq!(*g.last().unwrap(), 0.7);
    }

    #[test]
    fn exit_code_map() {
        assert_eq!(exit_code(&Error::Domain("x".into())), EXIT_DOMAIN);
        assert_eq!(exit_code(&Error::DepthExceeded { depth: 3, max: 2 }), EXIT_DOMAIN);
        assert_eq!(exit_code(&Error::ExtrapolationUnstable("x".into())), EXIT_CONVERGENCE);
    }
}
