//! Command-line front end: parses the series mini-language, dispatches to
//! the engine, and emits human tables or machine-readable reports.
//!
//! Exit codes: 0 success/PASS, 1 usage error (including expression syntax
//! errors), 2 validation failure (a requirement gate rejected the problem),
//! 3 numerical non-convergence. Every error is also written to stderr as a
//! single `LEVEL code message` line.

use crate::catalog::SummandSpec;
use crate::engine::{
    cross_validate, evaluate_series, loop_check, validate_combination, zeta_identity_check,
    EvalMethod, EvalReport, SeriesProblem,
};
use crate::error::{Error, Result};
use crate::expr::parse_complex;
use crate::kernel::{series_shape, KernelTag, KernelVariant, ALL_TAGS};
use crate::quadrature::QuadConfig;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

pub use crate::expr::parse_series_expr;

#[derive(Parser, Debug)]
#[command(
    name = "lapsum",
    about = "Evaluate convergent infinite series through inverse Laplace transforms",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CommonOpts {
    /// Kernel variant name (see `lapsum variants`)
    #[arg(long, default_value = "base")]
    variant: String,
    /// Kernel frequency parameter (complex literal, e.g. "2" or "1+0.5i")
    #[arg(long, default_value = "1")]
    alpha: String,
    /// Kernel shift/rate parameter, where the variant requires one
    #[arg(long)]
    beta: Option<String>,
    /// Kernel factor parameter, where the variant requires one
    #[arg(long)]
    gamma: Option<String>,
    /// Quadrature tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Oracle truncation budget
    #[arg(long)]
    max_terms: Option<usize>,
    /// Output format
    #[arg(long, default_value = "table", value_parser = ["table", "json", "csv"])]
    format: String,
    /// Config file with `key = value` lines (keys: tol, max_terms, talbot_m)
    #[arg(long)]
    config: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a series through the integral identity, cross-checked
    /// against a summation oracle
    Eval {
        /// Series expression, e.g. "power(z=2)"
        series_expr: String,
        /// Evaluation route
        #[arg(long, default_value = "auto",
              value_parser = ["auto", "point-mass", "quadrature", "ilt-quadrature"])]
        method: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Check the three validity requirements without evaluating
    Validate {
        series_expr: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Close the loop through the dual series and a forward Laplace
    /// transform in alpha
    LoopCheck {
        series_expr: String,
        /// Alpha sample points (repeatable)
        #[arg(long = "alpha-sample", default_values_t = vec![1.0, 2.0])]
        alpha_samples: Vec<f64>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Verify the alternating log-trig identities against the Dirichlet sum
    ZetaIdentity {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// List the summand families of the expression language
    Catalog,
    /// List the kernel variants and their parameter requirements
    Variants,
    /// Run the fixed corpus and emit a variant x family CSV matrix
    Bench {
        #[command(flatten)]
        common: CommonOpts,
    },
}

/// Short stable code for the diagnostic stream.
fn error_code(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::NoDensity => "no_density",
        Error::KernelPole(_) => "kernel_pole",
        Error::NonConvergence { .. } => "non_convergence",
        Error::BadIntegrand(_) => "bad_integrand",
        Error::NonIntegrable(_) => "non_integrable",
        Error::Divergent(_) => "divergent",
        Error::NotAlternating => "not_alternating",
        Error::UnsupportedOrder(_) => "unsupported_order",
        Error::UnsuitableTransform(_) => "unsuitable_transform",
        Error::TransformPole(_) => "transform_pole",
        Error::NonEvaluableShape(_) => "non_evaluable_shape",
        Error::Parse { .. } => "syntax",
        Error::InvalidCombination(_) => "invalid_combination",
    }
}

/// Exit code for an engine error: 1 usage, 2 validation, 3 numerical.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 1,
        Error::NonConvergence { .. } | Error::BadIntegrand(_) => 3,
        _ => 2,
    }
}

fn diagnostic(level: &str, code: &str, message: &str) {
    // single-line records: collapse any newlines in the message
    let msg = message.replace('\n', " ");
    eprintln!("{level} {code} {msg}");
}

fn fail(e: &Error) -> i32 {
    diagnostic("ERROR", error_code(e), &e.to_string());
    exit_code(e)
}

/// Render a report in the requested format. `series` and `variant` label
/// the CSV row; the JSON object has exactly the fields
/// {value_re, value_im, err_est, path, checks, oracle_gap, warnings}.
pub fn emit_report(report: &EvalReport, format: &str, series: &str, variant: &str, alpha: Complex64) -> String {
    match format {
        "json" => {
            let json = serde_json::json!({
                "value_re": report.value.re,
                "value_im": report.value.im,
                "err_est": report.err_est,
                "path": report.path.name(),
                "checks": report.requirement_checks,
                "oracle_gap": report.oracle_gap,
                "warnings": report.warnings,
            });
            serde_json::to_string_pretty(&json).expect("report fields are serializable")
        }
        "csv" => {
            let gap = report
                .oracle_gap
                .map(|g| format!("{g:.16e}"))
                .unwrap_or_default();
            format!(
                "series,variant,alpha,value_re,value_im,err_est,path,oracle_gap\n{},{},{},{:.16e},{:.16e},{:.16e},{},{}",
                series, variant, fmt_complex(alpha), report.value.re, report.value.im,
                report.err_est, report.path.name(), gap
            )
        }
        _ => {
            let checks: String = report
                .requirement_checks
                .iter()
                .map(|&b| if b { 'P' } else { 'F' })
                .collect();
            let gap = report
                .oracle_gap
                .map(|g| format!("{g:.3e}"))
                .unwrap_or_else(|| "-".into());
            let mut out = format!(
                "{:<24} | {:<9} | {:<14} | {:<6} | {}\n{:<24} | {:<9.3e} | {:<14} | {:<6} | {}",
                "Value", "±Err", "Path", "Checks", "Gap",
                fmt_complex(report.value), report.err_est, report.path.name(), checks, gap
            );
            for w in &report.warnings {
                out.push_str(&format!("\nwarning: {w}"));
            }
            out
        }
    }
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Settings merged from the optional config file and the flags
/// (flags win).
struct Settings {
    cfg: QuadConfig,
    max_terms: usize,
}

fn load_settings(common: &CommonOpts) -> Result<Settings> {
    let mut cfg = QuadConfig::default();
    let mut max_terms = 48usize;
    if let Some(path) = &common.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Domain(format!("cannot read config {path}: {e}")))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Domain(format!("config line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| Error::Domain(format!("config line {}: {what}", lineno + 1));
            match key {
                "tol" => {
                    let t: f64 = value.parse().map_err(|_| bad("tol must be a number"))?;
                    cfg.abs_tol = t;
                    cfg.rel_tol = t;
                }
                "max_terms" => {
                    max_terms = value.parse().map_err(|_| bad("max_terms must be an integer"))?;
                }
                "talbot_m" => {
                    cfg.talbot_m = value.parse().map_err(|_| bad("talbot_m must be an integer"))?;
                }
                other => return Err(bad(&format!("unknown key \"{other}\""))),
            }
        }
    }
    if let Some(t) = common.tol {
        cfg.abs_tol = t;
        cfg.rel_tol = t;
    }
    if let Some(n) = common.max_terms {
        max_terms = n;
    }
    cfg.validate()?;
    if max_terms < 8 {
        return Err(Error::Domain("max_terms must be at least 8".into()));
    }
    Ok(Settings { cfg, max_terms })
}

fn parse_variant(common: &CommonOpts) -> Result<KernelVariant> {
    let tag = KernelTag::from_name(&common.variant).ok_or_else(|| {
        Error::Domain(format!(
            "unknown variant \"{}\" (see `lapsum variants`)",
            common.variant
        ))
    })?;
    let alpha = parse_complex(&common.alpha)?;
    let beta = common.beta.as_deref().map(parse_complex).transpose()?;
    let gamma = common.gamma.as_deref().map(parse_complex).transpose()?;
    KernelVariant::new(tag, alpha, beta, gamma)
}

fn parse_method(name: &str) -> EvalMethod {
    match name {
        "point-mass" => EvalMethod::PointMass,
        "quadrature" => EvalMethod::Quadrature,
        "ilt-quadrature" => EvalMethod::IltQuadrature,
        _ => EvalMethod::Auto,
    }
}

fn cmd_eval(series_expr: &str, method: &str, common: &CommonOpts) -> i32 {
    let spec = match parse_series_expr(series_expr) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let (variant, settings) = match parse_variant(common).and_then(|v| Ok((v, load_settings(common)?))) {
        Ok(p) => p,
        Err(e) => return fail(&e),
    };
    let p = SeriesProblem::new(spec, variant);
    let method = parse_method(method);
    let report = match method {
        EvalMethod::Auto => cross_validate(&p, settings.max_terms, &settings.cfg),
        other => evaluate_series(&p, other, &settings.cfg),
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    if !report.requirement_checks.iter().all(|&b| b) {
        // a requirement gate failed: diagnostics, never a bare number
        for w in &report.warnings {
            diagnostic("ERROR", "requirement_gate", w);
        }
        return 2;
    }
    for w in &report.warnings {
        diagnostic("WARN", "check", w);
    }
    println!(
        "{}",
        emit_report(&report, &common.format, series_expr, &common.variant, variant.alpha)
    );
    0
}

fn cmd_validate(series_expr: &str, common: &CommonOpts) -> i32 {
    let spec = match parse_series_expr(series_expr) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let variant = match parse_variant(common) {
        Ok(v) => v,
        Err(e) => return fail(&e),
    };
    if let Err(e) = validate_combination(&spec, &variant) {
        return fail(&e);
    }
    if series_shape(&variant).constant_coefficient == 0 {
        // requirement 3 only gates the integral path; point-mass summands
        // check their mass locations at evaluation time instead
        if let Err(e) = variant.validate_for_integration() {
            return fail(&e);
        }
    }
    println!("OK {} with variant {}", series_expr, common.variant);
    0
}

fn cmd_loop_check(series_expr: &str, alpha_samples: &[f64], common: &CommonOpts) -> i32 {
    let spec = match parse_series_expr(series_expr) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let (variant, settings) = match parse_variant(common).and_then(|v| Ok((v, load_settings(common)?))) {
        Ok(p) => p,
        Err(e) => return fail(&e),
    };
    let p = SeriesProblem::new(spec, variant);
    let x_samples = [0.5, 1.0, 2.0];
    let report = match loop_check(&p, alpha_samples, &x_samples, &settings.cfg) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    for s in &report.samples {
        println!(
            "alpha={:<8} direct={:<24} dual={:<24} gap={:.3e} {}",
            s.alpha,
            fmt_complex(s.direct),
            fmt_complex(s.through_b),
            s.gap,
            if s.pass { "PASS" } else { "FAIL" }
        );
    }
    if report.all_pass() {
        0
    } else {
        diagnostic("ERROR", "loop_gap", "loop closure exceeded tolerance");
        2
    }
}

fn cmd_zeta_identity(a: f64, b: f64, common: &CommonOpts) -> i32 {
    let settings = match load_settings(common) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let report = match zeta_identity_check(a, b, &settings.cfg) {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };
    let pass = report.warnings.is_empty();
    for w in &report.warnings {
        diagnostic("ERROR", "identity_gap", w);
    }
    println!(
        "{}",
        emit_report(&report, &common.format, &format!("logtrig(a={a},b={b})"), "alternating",
                    Complex64::new(1.0, 0.0))
    );
    if pass { 0 } else { 2 }
}

fn cmd_catalog() -> i32 {
    println!("family        parameters      summand g(k)");
    println!("power         z               k^(-z)");
    println!("shifted_power a, beta         (a + k)^(-beta)");
    println!("exp           c               e^(-c k)");
    println!("cos           -               cos k");
    println!("sin           -               sin k");
    println!("logtrig_sin   a, b            sin(a ln k) / k^(b+1)");
    println!("logtrig_cos   a, b            cos(a ln k) / k^(b+1)");
    0
}

fn cmd_variants() -> i32 {
    println!("{:<28} {}", "variant", "parameters");
    for tag in ALL_TAGS {
        let mut params = String::from("alpha");
        if tag.needs_beta() {
            params.push_str(", beta");
        }
        if tag.needs_gamma() {
            params.push_str(", gamma");
        }
        println!("{:<28} {}", tag.name(), params);
    }
    0
}

/// Fixed corpus: one representative per family, every variant, default
/// parameter bindings where the variant needs them.
fn cmd_bench(common: &CommonOpts) -> i32 {
    let settings = match load_settings(common) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let corpus: [(&str, SummandSpec); 5] = [
        ("power(z=3)", SummandSpec::Power { z: Complex64::new(3.0, 0.0) }),
        (
            "shifted_power(a=0.3,beta=2)",
            SummandSpec::ShiftedPower {
                a: Complex64::new(0.3, 0.0),
                beta: Complex64::new(2.0, 0.0),
            },
        ),
        ("exp(c=1)", SummandSpec::Exponential { c: 1.0 }),
        ("cos()", SummandSpec::Cosine),
        (
            "logtrig_sin(a=1,b=1)",
            SummandSpec::LogTrigSin {
                a: Complex64::new(1.0, 0.0),
                b: Complex64::new(1.0, 0.0),
            },
        ),
    ];
    let mut out = String::from("variant");
    for (name, _) in &corpus {
        out.push(',');
        out.push_str(name);
    }
    for tag in ALL_TAGS {
        out.push('\n');
        out.push_str(tag.name());
        let beta = tag.needs_beta().then_some(Complex64::new(0.5, 0.0));
        let gamma = tag.needs_gamma().then_some(Complex64::new(2.0, 0.0));
        let variant = match KernelVariant::new(tag, Complex64::new(1.0, 0.0), beta, gamma) {
            Ok(v) => v,
            Err(_) => continue,
        };
        for (_, spec) in &corpus {
            out.push(',');
            let p = SeriesProblem::new(*spec, variant);
            match evaluate_series(&p, EvalMethod::Auto, &settings.cfg) {
                Ok(r) if r.requirement_checks.iter().all(|&b| b) => {
                    out.push_str(&format!("{:.16e}", r.value.re));
                }
                Ok(_) => out.push_str("rejected"),
                Err(e) => out.push_str(error_code(&e)),
            }
        }
    }
    println!("{out}");
    0
}

/// Entry point returning the process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Eval {
            series_expr,
            method,
            common,
        } => cmd_eval(&series_expr, &method, &common),
        Command::Validate {
            series_expr,
            common,
        } => cmd_validate(&series_expr, &common),
        Command::LoopCheck {
            series_expr,
            alpha_samples,
            common,
        } => cmd_loop_check(&series_expr, &alpha_samples, &common),
        Command::ZetaIdentity { a, b, common } => cmd_zeta_identity(a, b, &common),
        Command::Catalog => cmd_catalog(),
        Command::Variants => cmd_variants(),
        Command::Bench { common } => cmd_bench(&common),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::EvalPath;

    fn sample_report() -> EvalReport {
        EvalReport {
            value: Complex64::new(1.6449340668482264, 0.0),
            err_est: 3.2e-13,
            path: EvalPath::Quadrature,
            requirement_checks: [true; 3],
            oracle_value: Some(Complex64::new(1.6449340668482264, 0.0)),
            oracle_gap: Some(4.4e-16),
            warnings: vec![],
        }
    }

    #[test]
    fn json_fields_exact_and_round_trip() {
        let r = sample_report();
        let text = emit_report(&r, "json", "power(z=2)", "base", Complex64::new(1.0, 0.0));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let obj = v.as_object().unwrap();
        let mut keys: Vec<_> = obj.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            ["checks", "err_est", "oracle_gap", "path", "value_im", "value_re", "warnings"]
        );
        assert_eq!(obj["value_re"].as_f64().unwrap().to_bits(), r.value.re.to_bits());
        assert_eq!(obj["err_est"].as_f64().unwrap().to_bits(), r.err_est.to_bits());
        assert_eq!(
            obj["oracle_gap"].as_f64().unwrap().to_bits(),
            r.oracle_gap.unwrap().to_bits()
        );
        assert_eq!(obj["path"].as_str().unwrap(), "quadrature");
    }

    #[test]
    fn csv_header_and_precision() {
        let r = sample_report();
        let text = emit_report(&r, "csv", "power(z=2)", "base", Complex64::new(1.0, 0.0));
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "series,variant,alpha,value_re,value_im,err_est,path,oracle_gap"
        );
        let row = lines.next().unwrap();
        assert!(row.starts_with("power(z=2),base,1,"));
        // 17 significant digits round-trip exactly
        let value_field = row.split(',').nth(3).unwrap();
        assert_eq!(value_field.parse::<f64>().unwrap().to_bits(), r.value.re.to_bits());
    }

    #[test]
    fn table_has_contracted_columns() {
        let r = sample_report();
        let text = emit_report(&r, "table", "power(z=2)", "base", Complex64::new(1.0, 0.0));
        let header = text.lines().next().unwrap();
        for col in ["Value", "±Err", "Path", "Checks", "Gap"] {
            assert!(header.contains(col), "{header}");
        }
    }

    #[test]
    fn exit_code_table() {
        use crate::error::Error as E;
        let cases: Vec<(E, i32)> = vec![
            (E::Parse { offset: 1, expected: "x".into() }, 1),
            (E::Domain("d".into()), 2),
            (E::NoDensity, 2),
            (E::KernelPole(Complex64::new(0.0, 0.0)), 2),
            (E::NonIntegrable(-1.5), 2),
            (E::Divergent("d".into()), 2),
            (E::NotAlternating, 2),
            (E::UnsupportedOrder(9), 2),
            (E::UnsuitableTransform("u".into()), 2),
            (E::TransformPole(Complex64::new(0.0, 0.0)), 2),
            (E::NonEvaluableShape("s".into()), 2),
            (E::InvalidCombination("i".into()), 2),
            (
                E::NonConvergence {
                    best: Complex64::new(0.0, 0.0),
                    err_est: 1.0,
                },
                3,
            ),
            (E::BadIntegrand(0.0), 3),
        ];
        for (e, want) in cases {
            assert_eq!(exit_code(&e), want, "{e}");
        }
    }
}
