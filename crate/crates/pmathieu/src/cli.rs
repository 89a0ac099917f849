//! Command dispatch for the `pmathieu` binary.
//!
//! Subcommands: `compute` (one method), `compare` (every applicable method
//! plus a cross-agreement verdict), `convergence` (partial-sum table),
//! `zeta-p`, `gl-check`, and `selfcheck`.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error, 3 convergence
//! failure or cross-check disagreement.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::gl::{gl_fractional_integral, nth_derivative_raw, GlConfig};
use crate::mathieu::{s_integral, s_series, s_series_partials, MathieuParams};
use crate::report::{
    fmt_sig17, CompareReport, ConvergenceReport, ConvergenceRow, OutputRecord,
};
use crate::schlomilch::{
    repr_b1, repr_b2, repr_b3, repr_b4, repr_b7, repr_partials, repr_thm1,
    repr_thm1_fractional, SumForm,
};
use crate::selfcheck::{all_pass, run_selfcheck, SelfcheckOptions};
use crate::types::EvalResult;
use crate::zeta_p::{zeta_p_integral, zeta_p_kseries, zeta_p_with_threshold, P_KSERIES_MIN};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

const DEFAULT_TOL: f64 = 1e-10;
const DEFAULT_MAX_TERMS: u64 = 1024;

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // --help and --version surface here with non-error intent.
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match cli.cmd {
        Cmd::Compute(a) => run_compute(a),
        Cmd::Compare(a) => run_compare(a),
        Cmd::Convergence(a) => run_convergence(a),
        Cmd::ZetaP(a) => run_zeta_p(a),
        Cmd::GlCheck(a) => run_gl_check(a),
        Cmd::Selfcheck(a) => run_selfcheck_cmd(a),
    }
}

#[derive(Parser)]
#[command(
    name = "pmathieu",
    version,
    about = "Extended Mathieu series S_{mu,p}(r) through independent cross-checking representations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate S_{mu,p}(r) with one method
    Compute(ComputeArgs),
    /// Evaluate S_{mu,p}(r) with every applicable method and cross-compare
    Compare(CompareArgs),
    /// Emit the partial-sum convergence table of a term-based method
    Convergence(ConvergenceArgs),
    /// Evaluate the extended zeta function zeta_p(alpha)
    #[command(name = "zeta-p")]
    ZetaP(ZetaArgs),
    /// Verify the difference/fractional operator on its eigenfunction
    #[command(name = "gl-check")]
    GlCheck(GlArgs),
    /// Run the cross-representation invariant suite
    Selfcheck(SelfcheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Series,
    Integral,
    Thm1,
    /// Experimental fractional-order extension of thm1
    ThmFrac,
    B1,
    B2,
    B3,
    B4,
    B7,
}

impl Method {
    fn tag(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Series => "series",
            Method::Integral => "integral",
            Method::Thm1 => "thm1",
            Method::ThmFrac => "thm1-frac",
            Method::B1 => "b1",
            Method::B2 => "b2",
            Method::B3 => "b3",
            Method::B4 => "b4",
            Method::B7 => "b7",
        }
    }
}

#[derive(Args)]
struct ParamArgs {
    /// Order mu
    #[arg(long, allow_hyphen_values = true)]
    mu: f64,
    /// Damping parameter p (p = 0 is the classical series)
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    /// Argument r > 0
    #[arg(long, allow_hyphen_values = true)]
    r: f64,
    /// Requested relative tolerance [default: 1e-10]
    #[arg(long)]
    tol: Option<f64>,
    /// Output format [default: json]
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Configuration file with key=value lines
    /// (keys: tol, max_terms, dispatch_p_threshold)
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Evaluation method; auto picks the Schlomilch form matching mu
    #[arg(long, value_enum, default_value = "auto")]
    method: Method,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Test hook: multiply the first record's value by (1 + this)
    #[arg(long, hide = true, default_value_t = 0.0, allow_hyphen_values = true)]
    inject_fault: f64,
}

#[derive(Args)]
struct ConvergenceArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Term-based method (series, b1..b7, thm1)
    #[arg(long, value_enum)]
    method: Method,
    /// Largest term count tabulated [default: 1024 or config max_terms]
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_terms: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ZetaRoute {
    Auto,
    Integral,
    Kseries,
}

#[derive(Args)]
struct ZetaArgs {
    /// Argument alpha >= 0
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    /// Damping parameter p >= 0
    #[arg(long, allow_hyphen_values = true)]
    p: f64,
    /// Evaluation route
    #[arg(long, value_enum, default_value = "auto")]
    route: ZetaRoute,
    /// Requested relative tolerance [default: 1e-10]
    #[arg(long)]
    tol: Option<f64>,
    /// Output format [default: json]
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Configuration file with key=value lines
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct GlArgs {
    /// Operator order alpha, 0 < alpha <= 4
    #[arg(long, allow_hyphen_values = true)]
    alpha: f64,
    /// Evaluation point x, 0.05 <= |x| <= 20
    #[arg(long, default_value_t = 0.4, allow_hyphen_values = true)]
    x: f64,
    /// Output format [default: json]
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct SelfcheckArgs {
    /// Test hook: flip the expected K-parity sign so one group must fail
    #[arg(long, hide = true)]
    inject_fault: bool,
    /// Output format [default: text lines]
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// Optional key=value configuration (unknown keys are usage errors so that
/// typos do not silently fall back to defaults).
#[derive(Debug, Default, Clone, Copy)]
struct FileConfig {
    tol: Option<f64>,
    max_terms: Option<u64>,
    dispatch_p_threshold: Option<f64>,
}

fn load_config(path: Option<&Path>) -> Result<FileConfig, String> {
    let mut cfg = FileConfig::default();
    let Some(path) = path else {
        return Ok(cfg);
    };
    let text = fs::read_to_string(path)
        .map_err(|e| format!("config {}: {e}", path.display()))?;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!(
                "config {}:{}: expected key=value, got '{line}'",
                path.display(),
                lineno + 1
            ));
        };
        let (key, value) = (key.trim(), value.trim());
        let bad = |e: &dyn std::fmt::Display| {
            format!("config {}:{}: {key}: {e}", path.display(), lineno + 1)
        };
        match key {
            "tol" => cfg.tol = Some(value.parse().map_err(|e| bad(&e))?),
            "max_terms" => cfg.max_terms = Some(value.parse().map_err(|e| bad(&e))?),
            "dispatch_p_threshold" => {
                cfg.dispatch_p_threshold = Some(value.parse().map_err(|e| bad(&e))?)
            }
            _ => {
                return Err(format!(
                    "config {}:{}: unknown key '{key}' \
                     (expected tol, max_terms, or dispatch_p_threshold)",
                    path.display(),
                    lineno + 1
                ))
            }
        }
    }
    Ok(cfg)
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Overflow(_) => EXIT_DOMAIN,
        Error::Convergence { .. } | Error::InternalConsistency(_) => EXIT_INCONSISTENT,
    }
}

/// Flag < config < default resolution for the tolerance.
fn resolve_tol(flag: Option<f64>, cfg: &FileConfig) -> Result<f64, String> {
    let tol = flag.or(cfg.tol).unwrap_or(DEFAULT_TOL);
    if !tol.is_finite() || tol <= 0.0 {
        return Err(format!("tol must be positive and finite, got {tol}"));
    }
    Ok(tol)
}

/// The Schlomilch tag matching mu exactly, if one exists and p > 0.
fn auto_method(mu: f64, p: f64) -> Method {
    if p > 0.0 {
        for (m, tag) in [
            (-0.5, Method::B2),
            (0.0, Method::B3),
            (0.5, Method::B1),
            (1.0, Method::B4),
            (1.5, Method::Thm1),
            (2.0, Method::B7),
        ] {
            if (mu - m).abs() < 1e-12 {
                return tag;
            }
        }
    }
    Method::Integral
}

fn require_mu(tag: &str, mu: f64, want: f64) -> Result<(), Error> {
    if (mu - want).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "method {tag} evaluates mu = {want} only, got mu = {mu}"
        )));
    }
    Ok(())
}

/// thm1 needs mu in {1/2, 3/2, 5/2}; returns the derivative order n.
fn thm1_order(mu: f64) -> Result<u32, Error> {
    let n = mu + 1.5;
    let rounded = n.round();
    if (n - rounded).abs() < 1e-12 && (2.0..=4.0).contains(&rounded) {
        Ok(rounded as u32)
    } else {
        Err(Error::Domain(format!(
            "thm1 needs mu in {{1/2, 3/2, 5/2}} (derivative order n = mu + 3/2 in 2..=4), \
             got mu = {mu}"
        )))
    }
}

fn evaluate(method: Method, mu: f64, p: f64, r: f64, tol: f64) -> Result<EvalResult, Error> {
    match method {
        Method::Auto => evaluate(auto_method(mu, p), mu, p, r, tol),
        Method::Series => s_series(&MathieuParams::new(mu, p, r)?, tol),
        Method::Integral => s_integral(&MathieuParams::new(mu, p, r)?, tol),
        Method::B1 => {
            require_mu("b1", mu, 0.5)?;
            repr_b1(p, r, tol)
        }
        Method::B2 => {
            require_mu("b2", mu, -0.5)?;
            repr_b2(p, r, tol)
        }
        Method::B3 => {
            require_mu("b3", mu, 0.0)?;
            repr_b3(p, r, tol)
        }
        Method::B4 => {
            require_mu("b4", mu, 1.0)?;
            repr_b4(p, r, tol)
        }
        Method::B7 => {
            require_mu("b7", mu, 2.0)?;
            repr_b7(p, r, tol)
        }
        Method::Thm1 => repr_thm1(thm1_order(mu)?, p, r, tol),
        Method::ThmFrac => repr_thm1_fractional(mu + 1.5, p, r, tol),
    }
}

fn run_compute(args: ComputeArgs) -> i32 {
    let pa = args.params;
    let cfg = match load_config(pa.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let tol = match resolve_tol(pa.tol, &cfg) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let format = pa.format.unwrap_or(Format::Json);
    let started = Instant::now();
    match evaluate(args.method, pa.mu, pa.p, pa.r, tol) {
        Ok(res) => {
            let rec =
                OutputRecord::from_eval(pa.mu, pa.p, pa.r, &res, elapsed_ns(&started));
            emit_record(&rec, format);
            EXIT_OK
        }
        Err(Error::Convergence { what, best, err_estimate }) => {
            // Best-effort record on the normal stream, verdict on stderr.
            eprintln!("error: convergence failure in {what}");
            let tag = match args.method {
                Method::Auto => auto_method(pa.mu, pa.p).tag(),
                m => m.tag(),
            };
            let rec = OutputRecord {
                method: tag.to_string(),
                mu: pa.mu,
                p: pa.p,
                r: pa.r,
                value: best,
                err_estimate,
                terms: 0,
                elapsed_ns: elapsed_ns(&started),
            };
            emit_record(&rec, format);
            EXIT_INCONSISTENT
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

/// Methods that can evaluate S at this parameter point, in emission order.
fn applicable_methods(mu: f64, p: f64, r: f64) -> Vec<Method> {
    let mut out = Vec::new();
    if MathieuParams::new(mu, p, r).is_err() {
        return out;
    }
    if r < 1.0 {
        out.push(Method::Series);
    }
    out.push(Method::Integral);
    if p > 0.0 {
        for (m, tag) in [
            (-0.5, Method::B2),
            (0.0, Method::B3),
            (0.5, Method::B1),
            (1.0, Method::B4),
            (2.0, Method::B7),
        ] {
            if (mu - m).abs() < 1e-12 {
                out.push(tag);
            }
        }
        if thm1_order(mu).is_ok() {
            out.push(Method::Thm1);
        }
    }
    out
}

fn run_compare(args: CompareArgs) -> i32 {
    let pa = args.params;
    let cfg = match load_config(pa.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let tol = match resolve_tol(pa.tol, &cfg) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let format = pa.format.unwrap_or(Format::Json);

    let methods = applicable_methods(pa.mu, pa.p, pa.r);
    let mut records = Vec::new();
    for m in methods {
        let started = Instant::now();
        match evaluate(m, pa.mu, pa.p, pa.r, tol) {
            Ok(res) => records.push(OutputRecord::from_eval(
                pa.mu,
                pa.p,
                pa.r,
                &res,
                elapsed_ns(&started),
            )),
            Err(Error::Convergence { what, best, err_estimate }) => {
                eprintln!("note: {}: convergence failure in {what}, using best effort", m.tag());
                records.push(OutputRecord {
                    method: m.tag().to_string(),
                    mu: pa.mu,
                    p: pa.p,
                    r: pa.r,
                    value: best,
                    err_estimate,
                    terms: 0,
                    elapsed_ns: elapsed_ns(&started),
                });
            }
            Err(e) => {
                eprintln!("note: skipping {}: {e}", m.tag());
            }
        }
    }
    if records.is_empty() {
        eprintln!("error: no applicable method at mu = {}, p = {}, r = {}", pa.mu, pa.p, pa.r);
        return EXIT_DOMAIN;
    }
    if args.inject_fault != 0.0 {
        records[0].value *= 1.0 + args.inject_fault;
    }

    let mut max_delta = 0.0f64;
    let mut consistent = true;
    for i in 0..records.len() {
        for j in (i + 1)..records.len() {
            let delta = (records[i].value - records[j].value).abs();
            max_delta = max_delta.max(delta);
            let budget = 10.0 * (records[i].err_estimate + records[j].err_estimate);
            if delta > budget {
                consistent = false;
                eprintln!(
                    "disagreement: {} vs {}: |delta| = {:.3e} exceeds 10x combined err {:.3e}",
                    records[i].method,
                    records[j].method,
                    delta,
                    budget
                );
            }
        }
    }

    let report = CompareReport { records, max_pairwise_delta: max_delta, consistent };
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Csv => println!("{}", report.to_csv()),
    }
    if consistent {
        EXIT_OK
    } else {
        EXIT_INCONSISTENT
    }
}

fn run_convergence(args: ConvergenceArgs) -> i32 {
    let pa = args.params;
    let cfg = match load_config(pa.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let tol = match resolve_tol(pa.tol, &cfg) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    // The convergence table is a spreadsheet artifact first; JSON on request.
    let format = pa.format.unwrap_or(Format::Csv);
    let max_terms = args.max_terms.or(cfg.max_terms).unwrap_or(DEFAULT_MAX_TERMS);

    let outcome: Result<(Vec<(u64, f64)>, EvalResult), Error> = match args.method {
        Method::Series => MathieuParams::new(pa.mu, pa.p, pa.r)
            .and_then(|params| s_series_partials(&params, tol)),
        Method::B1 => require_mu("b1", pa.mu, 0.5)
            .and_then(|_| repr_partials(SumForm::B1, pa.p, pa.r, tol)),
        Method::B2 => require_mu("b2", pa.mu, -0.5)
            .and_then(|_| repr_partials(SumForm::B2, pa.p, pa.r, tol)),
        Method::B3 => require_mu("b3", pa.mu, 0.0)
            .and_then(|_| repr_partials(SumForm::B3, pa.p, pa.r, tol)),
        Method::B4 => require_mu("b4", pa.mu, 1.0)
            .and_then(|_| repr_partials(SumForm::B4, pa.p, pa.r, tol)),
        Method::B7 => require_mu("b7", pa.mu, 2.0)
            .and_then(|_| repr_partials(SumForm::B7, pa.p, pa.r, tol)),
        Method::Thm1 => thm1_order(pa.mu)
            .and_then(|n| repr_partials(SumForm::Thm1(n), pa.p, pa.r, tol)),
        Method::Auto | Method::Integral | Method::ThmFrac => Err(Error::Domain(format!(
            "convergence table needs a term-based method (series, b1..b7, thm1), got {}",
            args.method.tag()
        ))),
    };

    let (partials, res) = match outcome {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };

    // Rows at powers of two up to max_terms, plus the natural stopping
    // point so the final partial equals the converged value.
    let mut rows = Vec::new();
    let mut k = 1u64;
    while k <= max_terms && (k as usize) <= partials.len() {
        let (terms, partial) = partials[(k - 1) as usize];
        rows.push(ConvergenceRow {
            terms,
            partial,
            err_estimate: (partial - res.value).abs() + res.err_estimate,
        });
        k *= 2;
    }
    let natural = partials.len() as u64;
    if natural <= max_terms && rows.last().is_none_or(|r| r.terms != natural) {
        let (terms, partial) = partials[partials.len() - 1];
        rows.push(ConvergenceRow {
            terms,
            partial,
            err_estimate: (partial - res.value).abs() + res.err_estimate,
        });
    }

    let report = ConvergenceReport {
        method: args.method.tag().to_string(),
        mu: pa.mu,
        p: pa.p,
        r: pa.r,
        rows,
    };
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Csv => println!("{}", report.to_csv()),
    }
    EXIT_OK
}

fn run_zeta_p(args: ZetaArgs) -> i32 {
    let cfg = match load_config(args.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let tol = match resolve_tol(args.tol, &cfg) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let threshold = cfg.dispatch_p_threshold.unwrap_or(P_KSERIES_MIN);
    let format = args.format.unwrap_or(Format::Json);
    let started = Instant::now();
    let outcome = match args.route {
        ZetaRoute::Auto => zeta_p_with_threshold(args.alpha, args.p, tol, threshold),
        ZetaRoute::Integral => zeta_p_integral(args.alpha, args.p, tol),
        ZetaRoute::Kseries => zeta_p_kseries(args.alpha, args.p, tol),
    };
    match outcome {
        Ok(res) => {
            let ns = elapsed_ns(&started);
            match format {
                Format::Json => println!(
                    "{{\"method\":\"{}\",\"alpha\":{},\"p\":{},\"value\":{},\"err_estimate\":{},\"terms\":{},\"elapsed_ns\":{}}}",
                    res.method.tag(),
                    fmt_sig17(args.alpha),
                    fmt_sig17(args.p),
                    fmt_sig17(res.value),
                    fmt_sig17(res.err_estimate),
                    res.terms_or_nodes,
                    ns
                ),
                Format::Csv => {
                    println!("method,alpha,p,value,err_estimate,terms,elapsed_ns");
                    println!(
                        "{},{},{},{},{},{},{}",
                        res.method.tag(),
                        fmt_sig17(args.alpha),
                        fmt_sig17(args.p),
                        fmt_sig17(res.value),
                        fmt_sig17(res.err_estimate),
                        res.terms_or_nodes,
                        ns
                    );
                }
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

struct GlCheckRow {
    name: &'static str,
    value: f64,
    expected: f64,
    rel_delta: f64,
    tol: f64,
}

fn run_gl_check(args: GlArgs) -> i32 {
    let alpha = args.alpha;
    let x = args.x;
    if !(alpha > 0.0 && alpha <= 4.0) || !alpha.is_finite() {
        eprintln!("error: domain error: gl-check needs 0 < alpha <= 4, got {alpha}");
        return EXIT_DOMAIN;
    }
    if !(0.05..=20.0).contains(&x.abs()) {
        eprintln!("error: domain error: gl-check needs 0.05 <= |x| <= 20, got {x}");
        return EXIT_DOMAIN;
    }
    let started = Instant::now();
    let mut rows: Vec<GlCheckRow> = Vec::new();

    let is_integer = alpha.fract() == 0.0;
    if is_integer && alpha <= 3.0 {
        // Difference stencil eigen-relation: d^n/dq^n e^{-qx} = (-x)^n e^{-qx}
        // evaluated at q = 1.
        let n = alpha as u32;
        let f = |q: f64| Ok((-q * x).exp());
        match nth_derivative_raw(f, 1.0, n, 0.05 / x.abs().max(1.0)) {
            Ok((d, _)) => {
                let expected = (-x).powi(n as i32) * (-x).exp();
                rows.push(GlCheckRow {
                    name: "stencil-eigen",
                    value: d,
                    expected,
                    rel_delta: (d - expected).abs() / expected.abs(),
                    tol: 1e-7,
                });
            }
            Err(e) => {
                eprintln!("error: {e}");
                return exit_code_for(&e);
            }
        }
    }

    // Fractional-sum eigen-relation: the order-alpha iterated integral of
    // e^{2t} over a window long enough to bury the lower limit is
    // 2^{-alpha} e^{2x}.
    let lambda = 2.0f64;
    let window = 16.0;
    let cfg = GlConfig::default();
    let gl = gl_fractional_integral(
        |t: f64| Ok((lambda * t).exp()),
        x - window,
        x,
        alpha,
        &cfg,
    );
    match gl {
        Ok(res) => {
            let expected = lambda.powf(-alpha) * (lambda * x).exp();
            rows.push(GlCheckRow {
                name: "gl-eigen",
                value: res.value,
                expected,
                rel_delta: (res.value - expected).abs() / expected.abs(),
                tol: 1e-6,
            });
        }
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    }

    let pass = rows.iter().all(|r| r.rel_delta <= r.tol);
    let ns = elapsed_ns(&started);
    match args.format.unwrap_or(Format::Json) {
        Format::Json => {
            let checks: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{{\"name\":\"{}\",\"value\":{},\"expected\":{},\"rel_delta\":{},\"tol\":{},\"pass\":{}}}",
                        r.name,
                        fmt_sig17(r.value),
                        fmt_sig17(r.expected),
                        fmt_sig17(r.rel_delta),
                        fmt_sig17(r.tol),
                        r.rel_delta <= r.tol
                    )
                })
                .collect();
            println!(
                "{{\"alpha\":{},\"x\":{},\"checks\":[{}],\"all_pass\":{},\"elapsed_ns\":{}}}",
                fmt_sig17(alpha),
                fmt_sig17(x),
                checks.join(","),
                pass,
                ns
            );
        }
        Format::Csv => {
            println!("name,alpha,x,value,expected,rel_delta,tol,pass");
            for r in &rows {
                println!(
                    "{},{},{},{},{},{},{},{}",
                    r.name,
                    fmt_sig17(alpha),
                    fmt_sig17(x),
                    fmt_sig17(r.value),
                    fmt_sig17(r.expected),
                    fmt_sig17(r.rel_delta),
                    fmt_sig17(r.tol),
                    r.rel_delta <= r.tol
                );
            }
        }
    }
    if pass {
        EXIT_OK
    } else {
        EXIT_INCONSISTENT
    }
}

fn run_selfcheck_cmd(args: SelfcheckArgs) -> i32 {
    let reports = run_selfcheck(&SelfcheckOptions { flip_k_parity: args.inject_fault });
    let ok = all_pass(&reports);
    match args.format {
        Some(Format::Json) => {
            let groups: Vec<String> = reports
                .iter()
                .map(|g| {
                    format!(
                        "{{\"name\":\"{}\",\"pass\":{},\"worst_rel\":{},\"tol\":{},\"detail\":{}}}",
                        g.name,
                        g.pass,
                        fmt_sig17(g.worst_rel),
                        fmt_sig17(g.tol),
                        json_string(&g.detail)
                    )
                })
                .collect();
            println!("{{\"groups\":[{}],\"all_pass\":{}}}", groups.join(","), ok);
        }
        Some(Format::Csv) => {
            println!("name,pass,worst_rel,tol");
            for g in &reports {
                println!(
                    "{},{},{},{}",
                    g.name,
                    g.pass,
                    fmt_sig17(g.worst_rel),
                    fmt_sig17(g.tol)
                );
            }
        }
        None => {
            for g in &reports {
                let verdict = if g.pass { "PASS" } else { "FAIL" };
                println!(
                    "[{verdict}] {:<26} worst {:>10.3e}  tol {:>8.1e}",
                    g.name, g.worst_rel, g.tol
                );
                if !g.pass {
                    println!("       {}", g.detail);
                }
            }
            let passed = reports.iter().filter(|g| g.pass).count();
            println!("selfcheck: {passed}/{} groups passed", reports.len());
        }
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_INCONSISTENT
    }
}

fn emit_record(rec: &OutputRecord, format: Format) {
    match format {
        Format::Json => println!("{}", rec.to_json()),
        Format::Csv => {
            println!("{}", OutputRecord::CSV_HEADER);
            println!("{}", rec.to_csv_row());
        }
    }
}

fn elapsed_ns(started: &Instant) -> u64 {
    u64::try_from(started.elapsed().as_nanos()).unwrap_or(u64::MAX)
}

/// Minimal JSON string escaping for detail messages.
fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
