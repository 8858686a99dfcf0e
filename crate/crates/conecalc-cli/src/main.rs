//! conecalc: exact convex-geometric invariants of the cone of nonnegative
//! forms and the cone of sums of powers of linear forms.
//!
//! Exit codes: 0 success, 1 failed mathematical check (suite), 2 usage or
//! input errors. All output is deterministic for fixed arguments and seed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use conecalc_cli::suite::{run_suite, SuiteConfig};
use conecalc_core::cone::{
    certify_nonnegative, certify_sum_of_powers, john_ball_c, lf_loewner, loewner_ball_cstar,
    max_extreme_form, symmetry_coefficient, Certificate, ConeBase,
};
use conecalc_core::harmonic::{
    dual_point, harmonic_decompose, legendre_harmonic_with_axis, unit_axis,
};
use conecalc_core::operator::{apply_t, degree_for_epsilon, t_coefficients, volume_ratio_bound};
use conecalc_core::parse::{parse_form, parse_rational, parse_rational_vector};
use conecalc_core::poly::{format_form, HomoForm};
use conecalc_core::rational::Rat;
use conecalc_core::sphere::{inner_product, integral};

#[derive(Parser)]
#[command(
    name = "conecalc",
    version,
    about = "Exact convex geometry of nonnegative forms and sums of powers of linear forms"
)]
struct Cli {
    /// Ambient dimension (number of variables)
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Half-degree k; forms have degree 2k
    #[arg(long, global = true)]
    k: Option<u32>,
    /// Power parameter m of the averaging operator
    #[arg(long, global = true)]
    m: Option<u64>,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Absolute tolerance for float-path checks
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Emit machine-readable JSON
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FormArgs {
    /// Form text in the x/r2 grammar (repeatable)
    #[arg(long = "form")]
    forms: Vec<String>,
    /// File containing one form (repeatable)
    #[arg(long = "file")]
    files: Vec<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CertifyKind {
    /// Membership in the cone of nonnegative forms
    Nonneg,
    /// Membership in the cone of sums of powers of linear forms
    Powers,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConeArg {
    Nonneg,
    Powers,
}

#[derive(Subcommand)]
enum Command {
    /// Exact integral of a form over the unit sphere
    Integrate(FormArgs),
    /// Exact inner product of two forms
    Inner(FormArgs),
    /// Harmonic level decomposition of a form
    Decompose(FormArgs),
    /// Legendre (zonal) harmonic of degree d
    Legendre {
        /// Degree of the harmonic
        #[arg(long)]
        d: u32,
        /// Exact rational unit axis, comma separated (default e_n)
        #[arg(long)]
        axis: Option<String>,
    },
    /// Dual point p_v of degree 2k (reproduces evaluation at v)
    Dualpoint {
        /// Exact rational unit vector, comma separated (default e_n)
        #[arg(long)]
        v: Option<String>,
    },
    /// Apply the averaging operator T_{2m,2k} to a form
    ApplyT(FormArgs),
    /// John ball of the base of the nonnegative cone
    John,
    /// Loewner ball of the base of the dual cone
    Loewner,
    /// Loewner ellipsoid of the base of the powers cone
    LfEllipsoid,
    /// Coefficient of symmetry of a cone base about r^{2k}
    Symmetry {
        #[arg(long, value_enum)]
        cone: ConeArg,
    },
    /// Extreme form of maximal sup norm in the nonnegative base
    Maxform,
    /// Exact membership certificate for a form
    Certify {
        #[arg(value_enum)]
        kind: CertifyKind,
        #[command(flatten)]
        form: FormArgs,
    },
    /// Volume-ratio bound for K(2m), or the m achieving a target epsilon
    VolumeBound {
        /// Exact rational epsilon in (0, 1]; picks m = ceil((2k^2+kn)/epsilon)
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Seeded randomized verification suites
    Suite {
        /// Trials per (n, k) cell
        #[arg(long, default_value_t = 200)]
        trials: u32,
        /// Squares per sampled sum
        #[arg(long, default_value_t = 3)]
        terms: u32,
        /// Smallest ambient dimension of the grid (the --n flag is the largest)
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        /// Smallest half-degree of the grid (the --k flag is the largest)
        #[arg(long, default_value_t = 1)]
        k_min: u32,
        /// Term budget for even-power expansions
        #[arg(long, default_value_t = 1_000_000)]
        term_budget: usize,
    },
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<conecalc_core::Error> for CliError {
    fn from(e: conecalc_core::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

fn require_n(cli: &Cli) -> Result<usize, CliError> {
    let n = cli.n.ok_or_else(|| CliError::usage("--n is required"))?;
    if n < 2 {
        return Err(CliError::usage("--n must be at least 2"));
    }
    if n > 8 {
        return Err(CliError::usage("--n larger than 8 is not supported"));
    }
    Ok(n)
}

fn require_k(cli: &Cli) -> Result<u32, CliError> {
    let k = cli.k.ok_or_else(|| CliError::usage("--k is required"))?;
    if k < 1 {
        return Err(CliError::usage("--k must be at least 1"));
    }
    if k > 16 {
        return Err(CliError::usage("--k larger than 16 is not supported"));
    }
    Ok(k)
}

fn gather_forms(args: &FormArgs, n: usize, expected: usize) -> Result<Vec<HomoForm>, CliError> {
    let mut texts: Vec<String> = Vec::new();
    for path in &args.files {
        let content = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        texts.push(content.trim().to_string());
    }
    texts.extend(args.forms.iter().cloned());
    if texts.len() != expected {
        return Err(CliError::usage(format!(
            "expected {expected} form(s), got {}",
            texts.len()
        )));
    }
    texts
        .iter()
        .map(|t| parse_form(t, n).map_err(Into::into))
        .collect()
}

fn parse_unit_vector(text: &Option<String>, n: usize) -> Result<Vec<Rat>, CliError> {
    match text {
        None => Ok(unit_axis(n)),
        Some(t) => {
            let v = parse_rational_vector(t)?;
            if v.len() != n {
                return Err(CliError::usage(format!(
                    "vector has {} coordinates, expected {n}",
                    v.len()
                )));
            }
            Ok(v)
        }
    }
}

/// Infer k from a degree-2k form, cross-checking any explicit --k.
fn infer_k(cli: &Cli, f: &HomoForm) -> Result<u32, CliError> {
    let d = f.degree();
    if d == 0 || !d.is_multiple_of(2) {
        return Err(CliError::usage(format!(
            "expected a form of positive even degree, got degree {d}"
        )));
    }
    let k = d / 2;
    if let Some(explicit) = cli.k {
        if explicit != k {
            return Err(CliError::usage(format!(
                "--k {explicit} conflicts with the form's degree {d}"
            )));
        }
    }
    Ok(k)
}

fn json_line(value: serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(&value).unwrap())
}

fn certificate_output(cert: &Certificate, json: bool) -> String {
    if json {
        json_line(serde_json::json!({
            "verdict": cert.verdict.to_string(),
            "distance": cert.distance.to_string(),
            "threshold": cert.threshold.to_string(),
            "basis": cert.basis,
            "boundary": cert.boundary,
            "input_integral": cert.scale.to_string(),
        }))
    } else {
        let mut out = format!(
            "verdict = {}\ndistance = {}\nthreshold = {}\nbasis = {}\n",
            cert.verdict, cert.distance, cert.threshold, cert.basis
        );
        if cert.boundary {
            out.push_str("boundary = true\n");
        }
        out
    }
}

fn scalar_output(name: &str, value: &Rat, tag: &str, json: bool) -> String {
    if json {
        json_line(serde_json::json!({
            name: value.to_string(),
            "basis": tag,
        }))
    } else {
        format!("{name} = {value} ({tag})\n")
    }
}

fn form_output(f: &HomoForm, json: bool) -> String {
    if json {
        json_line(serde_json::json!({ "form": format_form(f) }))
    } else {
        format!("{}\n", format_form(f))
    }
}

fn run(cli: &Cli) -> Result<(String, u8), CliError> {
    match &cli.command {
        Command::Integrate(args) => {
            let n = require_n(cli)?;
            let f = &gather_forms(args, n, 1)?[0];
            let value = integral(f);
            if cli.json {
                Ok((
                    json_line(serde_json::json!({ "integral": value.to_string() })),
                    0,
                ))
            } else {
                Ok((format!("integral = {value}\n"), 0))
            }
        }
        Command::Inner(args) => {
            let n = require_n(cli)?;
            let forms = gather_forms(args, n, 2)?;
            let value = inner_product(&forms[0], &forms[1])?;
            if cli.json {
                Ok((
                    json_line(serde_json::json!({ "inner": value.to_string() })),
                    0,
                ))
            } else {
                Ok((format!("inner = {value}\n"), 0))
            }
        }
        Command::Decompose(args) => {
            let n = require_n(cli)?;
            let f = &gather_forms(args, n, 1)?[0];
            let parts = harmonic_decompose(f);
            if cli.json {
                let levels: Vec<serde_json::Value> = parts
                    .levels()
                    .map(|(level, h)| serde_json::json!({ "level": level, "part": format_form(h) }))
                    .collect();
                Ok((json_line(serde_json::json!({ "levels": levels })), 0))
            } else {
                let mut out = String::new();
                for (level, h) in parts.levels() {
                    out.push_str(&format!("level {level}: {}\n", format_form(h)));
                }
                Ok((out, 0))
            }
        }
        Command::Legendre { d, axis } => {
            let n = require_n(cli)?;
            if *d > 32 {
                return Err(CliError::usage("--d larger than 32 is not supported"));
            }
            let axis = parse_unit_vector(axis, n)?;
            let l = legendre_harmonic_with_axis(n, *d, &axis)?;
            Ok((form_output(&l, cli.json), 0))
        }
        Command::Dualpoint { v } => {
            let n = require_n(cli)?;
            let k = require_k(cli)?;
            let v = parse_unit_vector(v, n)?;
            let p = dual_point(n, 2 * k, &v)?;
            Ok((form_output(&p, cli.json), 0))
        }
        Command::ApplyT(args) => {
            let n = require_n(cli)?;
            let f = &gather_forms(args, n, 1)?[0];
            let k = infer_k(cli, f)?;
            let m = cli.m.ok_or_else(|| CliError::usage("--m is required"))?;
            let spec = t_coefficients(n, k, m)?;
            let image = apply_t(&spec, f)?;
            Ok((form_output(&image, cli.json), 0))
        }
        Command::John => {
            let n = require_n(cli)?;
            let k = require_k(cli)?;
            let ball = john_ball_c(n, k);
            Ok((
                scalar_output("radius^2", &ball.bound, "john-ball", cli.json),
                0,
            ))
        }
        Command::Loewner => {
            let n = require_n(cli)?;
            let k = require_k(cli)?;
            let ball = loewner_ball_cstar(n, k);
            Ok((
                scalar_output("radius^2", &ball.bound, "dual-loewner-ball", cli.json),
                0,
            ))
        }
        Command::LfEllipsoid => {
            let n = require_n(cli)?;
            let k = require_k(cli)?;
            let spec = lf_loewner(n, k);
            if cli.json {
                let weights: Vec<serde_json::Value> = spec
                    .weights
                    .iter()
                    .map(
                        |(level, w)| serde_json::json!({ "level": level, "weight": w.to_string() }),
                    )
                    .collect();
                Ok((
                    json_line(serde_json::json!({
                        "bound": spec.bound.to_string(),
                        "weights": weights,
                        "basis": "powers-loewner-ellipsoid",
                    })),
                    0,
                ))
            } else {
                let mut out = format!("bound = {} (powers-loewner-ellipsoid)\n", spec.bound);
                for (level, w) in &spec.weights {
                    out.push_str(&format!("weight[{level}] = {w}\n"));
                }
                Ok((out, 0))
            }
        }
        Command::Symmetry { cone } => {
            let n = require_n(cli)?;
            let k = require_k(cli)?;
            let (base, tag) = match cone {
                ConeArg::Nonneg => (ConeBase::Nonneg, "nonneg-base-symmetry"),
                ConeArg::Powers => (ConeBase::Powers, "powers-base-symmetry"),
            };
            let c = symmetry_coefficient(base, n, k);
            Ok((scalar_output("coefficient", &c, tag, cli.json), 0))
        }
        Command::Maxform => {
            let n = require_n(cli)?;
            let k = require_k(cli)?;
            let f = max_extreme_form(n, k);
            let peak = f.evaluate(&unit_axis(n)).expect("axis arity");
            if cli.json {
                Ok((
                    json_line(serde_json::json!({
                        "form": format_form(&f),
                        "peak": peak.to_string(),
                        "integral": integral(&f).to_string(),
                    })),
                    0,
                ))
            } else {
                Ok((
                    format!(
                        "form = {}\npeak = {peak}\nintegral = {}\n",
                        format_form(&f),
                        integral(&f)
                    ),
                    0,
                ))
            }
        }
        Command::Certify { kind, form } => {
            let n = require_n(cli)?;
            let f = &gather_forms(form, n, 1)?[0];
            infer_k(cli, f)?;
            let cert = match kind {
                CertifyKind::Nonneg => certify_nonnegative(f)?,
                CertifyKind::Powers => certify_sum_of_powers(f)?,
            };
            Ok((certificate_output(&cert, cli.json), 0))
        }
        Command::VolumeBound { epsilon } => {
            let n = require_n(cli)?;
            let k = require_k(cli)?;
            match epsilon {
                Some(text) => {
                    let eps = parse_rational(text)?;
                    let m = degree_for_epsilon(n, k, &eps)?;
                    let bound = volume_ratio_bound(n, k, m)?;
                    if cli.json {
                        Ok((
                            json_line(serde_json::json!({
                                "m": m,
                                "bound": bound.to_string(),
                            })),
                            0,
                        ))
                    } else {
                        Ok((format!("m = {m}\nbound = {bound}\n"), 0))
                    }
                }
                None => {
                    let m = cli
                        .m
                        .ok_or_else(|| CliError::usage("--m or --epsilon is required"))?;
                    let bound = volume_ratio_bound(n, k, m)?;
                    if cli.json {
                        Ok((
                            json_line(serde_json::json!({ "bound": bound.to_string() })),
                            0,
                        ))
                    } else {
                        Ok((format!("bound = {bound}\n"), 0))
                    }
                }
            }
        }
        Command::Suite {
            trials,
            terms,
            n_min,
            k_min,
            term_budget,
        } => {
            let n_max = cli.n.unwrap_or(3);
            let k_max = cli.k.unwrap_or(2);
            if *n_min < 2 || n_max < *n_min || n_max > 8 {
                return Err(CliError::usage("suite dimension range is invalid"));
            }
            if *k_min < 1 || k_max < *k_min || k_max > 8 {
                return Err(CliError::usage("suite degree range is invalid"));
            }
            let config = SuiteConfig {
                n_range: (*n_min, n_max),
                k_range: (*k_min, k_max),
                trials: *trials,
                seed: cli.seed,
                tol: cli.tol,
                term_budget: *term_budget,
                sos_terms: *terms,
            };
            let report = run_suite(&config);
            let code = if report.pass() { 0 } else { 1 };
            if cli.json {
                Ok((json_line(report.to_json()), code))
            } else {
                Ok((report.render_text(), code))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((output, code)) => {
            print!("{output}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
