//! `sepkit`: command-line access to the root-separation toolkit.
//!
//! Coefficients are entered ascending (constant term first) everywhere:
//! `2,-13,17,14` is `14x^3+17x^2-13x+2`. All outputs are available as JSON
//! envelopes with a stable schema (see `schema/output.schema.json`); interval
//! endpoints are decimal strings rounded outward (lower down, upper up).

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use output::{enclosure_json, Envelope, OutputFormat};
use sepkit_core::dyadic::{Dyadic, Round};
use sepkit_core::error::Error;
use sepkit_core::exec::ExecMode;
use sepkit_core::families::{
    build as family_build, verify_family, FamilySpec, FamilyVariant, VerifyOptions,
};
use sepkit_core::poly::{self, IntPolynomial};
use sepkit_core::roots::{RootConfig, SepOptions, SepStatus, SeparationResult};
use sepkit_core::search::{search_records, Metric, SearchBox, SearchOptions};
use sepkit_core::{bounds, Result};
use std::path::PathBuf;
use std::str::FromStr;

/// Exit codes: 0 success, 1 domain error (e.g. undefined metric), 2 usage
/// error, 3 precision exhaustion.
fn exit_code(err: &Error) -> i32 {
    match err {
        Error::PrecisionExhausted { .. } => 3,
        Error::Parse(_)
        | Error::InvalidFamily(_)
        | Error::BoundDegree { .. }
        | Error::CheckpointMismatch { .. }
        | Error::Io(_) => 2,
        _ => 1,
    }
}

#[derive(Parser)]
#[command(
    name = "sepkit",
    version,
    about = "Root separation of integer polynomials: certified values, bounds, extremal families, record search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Paper,
    AltOdd,
}

#[derive(Subcommand)]
enum Command {
    /// Exact polynomial operations.
    Poly {
        #[command(subcommand)]
        op: PolyOp,
    },
    /// Certified minimal root distance sep(P).
    Sep(SepArgs),
    /// Certified minimal modulus gap abssep(P).
    Abssep(SepArgs),
    /// Evaluate every separation lower bound for a (degree, height) pair.
    Bounds {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        height: String,
        /// Certified upper bound on max{1,|alpha|,|beta|} (default 1).
        #[arg(long)]
        maxmod: Option<String>,
        /// Working precision in bits.
        #[arg(long, default_value_t = 128)]
        precision: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Extremal family constructions and verification.
    Family {
        #[command(subcommand)]
        op: FamilyOp,
    },
    /// Exhaustive symmetry-reduced record search over a coefficient box.
    Search {
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        bound: i64,
        #[arg(long)]
        metric: String,
        #[arg(long, default_value_t = 1)]
        top: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        workers: Option<usize>,
        /// Records JSON path; a companion .csv is written next to it.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum PolyOp {
    /// Exact evaluation P(t) at a rational point.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exact resultant res(P, Q).
    Resultant {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exact discriminant.
    Disc {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Squarefree part P / gcd(P, P').
    Squarefree {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct SepArgs {
    /// Ascending coefficients, e.g. `2,-13,17,14`.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Restrict to pairs of certified-real roots.
    #[arg(long)]
    real_only: bool,
    /// Relative tolerance exponent: stop at width <= 2^-TOL * value.
    #[arg(long, default_value_t = 20)]
    tol: u32,
    /// Working precision ceiling in bits (env SEPKIT_PRECISION_CEILING).
    #[arg(long)]
    precision_ceiling: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand)]
enum FamilyOp {
    /// Print the family polynomial P_{d,M}.
    Build {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value_t = VariantArg::Paper)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run every verification check for one member.
    Verify {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Scaling sweep over several M values (CSV).
    Sweep {
        #[arg(long)]
        d: u32,
        #[arg(long, value_delimiter = ',')]
        m_list: Vec<u64>,
        #[arg(long, default_value = "csv")]
        format: String,
        /// CSV output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a gnuplot script next to the CSV.
        #[arg(long, requires = "out")]
        emit_gnuplot: bool,
    },
}

fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n =
            BigInt::from_str(n.trim()).map_err(|_| Error::Parse(format!("bad numerator `{n}`")))?;
        let d = BigInt::from_str(d.trim())
            .map_err(|_| Error::Parse(format!("bad denominator `{d}`")))?;
        if d == BigInt::from(0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let digits = frac.len() as u32;
        let joined = format!("{int}{frac}");
        let n =
            BigInt::from_str(&joined).map_err(|_| Error::Parse(format!("bad decimal `{text}`")))?;
        return Ok(BigRational::new(n, BigInt::from(10u32).pow(digits)));
    }
    let n = BigInt::from_str(text).map_err(|_| Error::Parse(format!("bad integer `{text}`")))?;
    Ok(BigRational::from_integer(n))
}

fn precision_ceiling(cli_value: Option<u64>) -> u64 {
    cli_value
        .or_else(|| std::env::var("SEPKIT_PRECISION_CEILING").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(1 << 16)
}

fn sep_result_json(r: &SeparationResult) -> serde_json::Value {
    let status = match r.status {
        SepStatus::Positive => "positive",
        SepStatus::ZeroCertified => "zero_certified",
        SepStatus::Undefined => "undefined",
        SepStatus::Undecided => "undecided",
    };
    let mut obj = serde_json::json!({ "status": status });
    if let Some(iv) = &r.value {
        obj["lower"] = serde_json::Value::String(iv.lo().to_decimal(30, Round::Down));
        obj["upper"] = serde_json::Value::String(iv.hi().to_decimal(30, Round::Up));
    }
    if let Some((i, j)) = r.witness {
        obj["witness"] = serde_json::json!([i, j]);
    }
    if let Some((a, b)) = r.witness_real {
        obj["witness_real"] = serde_json::json!([a, b]);
    }
    obj["squarefree_applied"] = serde_json::Value::Bool(r.squarefree_applied);
    obj
}

fn run_separation(args: &SepArgs, absolute: bool) -> Result<(Envelope, i32)> {
    let p = IntPolynomial::parse(&args.poly)?;
    let opts = SepOptions {
        rel_tol_log2: args.tol,
        root_config: RootConfig::with_ceiling(precision_ceiling(args.precision_ceiling)),
    };
    let r = match (absolute, args.real_only) {
        (false, false) => sepkit_core::roots::sep(&p, &opts)?,
        (false, true) => sepkit_core::roots::sep_real(&p, &opts)?,
        (true, false) => sepkit_core::roots::abssep(&p, &opts)?,
        (true, true) => sepkit_core::roots::abssep_real(&p, &opts)?,
    };
    let command = if absolute { "abssep" } else { "sep" };
    let env = Envelope::new(
        command,
        serde_json::json!({
            "poly": p.to_coeff_string(),
            "pretty": p.to_pretty_string(),
            "real_only": args.real_only,
            "tol_log2": args.tol,
        }),
        sep_result_json(&r),
        r.precision_used,
    );
    let code = if r.status == SepStatus::Positive { 0 } else { 1 };
    Ok((env, code))
}

fn run_bounds(degree: u32, height: &str, maxmod: Option<&str>, precision: u64) -> Result<Envelope> {
    let h = BigInt::from_str(height).map_err(|_| Error::Parse(format!("bad height `{height}`")))?;
    if h <= BigInt::from(0) {
        return Err(Error::Parse("height must be >= 1".into()));
    }
    let maxmod_dy = match maxmod {
        Some(text) => {
            let r = parse_rational(text)?;
            let dy = Dyadic::from_rational(&r, precision, Round::Down);
            if dy < Dyadic::one() {
                return Err(Error::Parse("maxmod must be >= 1".into()));
            }
            dy
        }
        None => Dyadic::one(),
    };
    let report = bounds::BoundReport::compute(degree, &h, &maxmod_dy, precision)?;
    // Landau's bound needs actual coefficients; report the (d, H) majorant
    let landau_cap =
        Dyadic::from_bigint(BigInt::from(degree + 1) * &h * &h).sqrt(precision, Round::Up);
    let result = serde_json::json!({
        "mahler_pair": report.mahler_pair.to_decimal(30, Round::Down),
        "thm1": report.thm1.to_decimal(30, Round::Down),
        "thm2": report.thm2.as_ref().map(|b| b.to_decimal(30, Round::Down)),
        "gs_exponent": report.gs_exponent.to_string(),
        "gs_exponent_certifies": report.gs_exponent_certifies,
        "landau_upper_note": format!(
            "M(P) <= sqrt(sum a_i^2) needs coefficients; for this (d, H) it is at most sqrt(d+1)*H <= {}",
            landau_cap.to_decimal(12, Round::Up)
        ),
        "gelfond": report.gelfond_factor_height.to_string(),
    });
    Ok(Envelope::new(
        "bounds",
        serde_json::json!({
            "degree": degree,
            "height": h.to_string(),
            "maxmod": maxmod.unwrap_or("1"),
        }),
        result,
        precision,
    ))
}

fn family_report_json(report: &sepkit_core::families::FamilyReport) -> serde_json::Value {
    serde_json::json!({
        "passed": report.all_passed(),
        "checks": report.checks.iter().map(|c| serde_json::json!({
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
        "abssep": report.abssep.as_ref().map(enclosure_json),
        "scaled_ratio": report.scaled_ratio.as_ref().map(enclosure_json),
    })
}

fn run_family(op: &FamilyOp) -> Result<(Envelope, OutputFormat, i32)> {
    match op {
        FamilyOp::Build { d, m, variant, format } => {
            let spec = match variant {
                VariantArg::Paper => FamilySpec::paper(*d, *m),
                VariantArg::AltOdd => FamilySpec::alternate_odd(*d, *m),
            };
            let p = family_build(&spec)?;
            let env = Envelope::new(
                "family build",
                serde_json::json!({
                    "d": d, "m": m,
                    "variant": if spec.variant == FamilyVariant::Paper { "paper" } else { "alt-odd" },
                }),
                serde_json::json!({
                    "coeffs": p.to_coeff_string(),
                    "pretty": p.to_pretty_string(),
                }),
                0,
            );
            Ok((env, OutputFormat::from(*format), 0))
        }
        FamilyOp::Verify { d, m, format } => {
            let spec = FamilySpec::paper(*d, *m);
            let report = verify_family(&spec, &VerifyOptions::default())?;
            let code = if report.all_passed() { 0 } else { 1 };
            let env = Envelope::new(
                "family verify",
                serde_json::json!({ "d": d, "m": m }),
                family_report_json(&report),
                24,
            );
            Ok((env, OutputFormat::from(*format), code))
        }
        FamilyOp::Sweep { d, m_list, format, out, emit_gnuplot } => {
            if format != "csv" {
                return Err(Error::Parse("family sweep supports --format csv".into()));
            }
            if m_list.is_empty() {
                return Err(Error::Parse("family sweep needs --m-list".into()));
            }
            let mut csv = String::from("d,M,abssep_lower,abssep_upper,ratio_to_M_pow\n");
            for &m in m_list {
                let report = verify_family(&FamilySpec::paper(*d, m), &VerifyOptions::default())?;
                let (lo, hi) = match &report.abssep {
                    Some(iv) => {
                        (iv.lo().to_decimal(20, Round::Down), iv.hi().to_decimal(20, Round::Up))
                    }
                    None => ("".into(), "".into()),
                };
                let ratio = match &report.scaled_ratio {
                    Some(iv) => iv.hi().to_decimal(12, Round::Up),
                    None => "".into(),
                };
                csv.push_str(&format!("{d},{m},{lo},{hi},{ratio}\n"));
            }
            match out {
                Some(path) => {
                    std::fs::write(path, &csv)?;
                    if *emit_gnuplot {
                        let script = path.with_extension("gnuplot");
                        let csv_name = path.file_name().unwrap().to_string_lossy();
                        std::fs::write(
                            &script,
                            format!(
                                "set datafile separator ','\nset logscale xy\nset xlabel 'M'\nset ylabel 'abssep'\nplot '{csv_name}' using 2:4 skip 1 with linespoints title 'd={d}'\n"
                            ),
                        )?;
                    }
                    eprintln!("wrote {}", path.display());
                }
                None => print!("{csv}"),
            }
            let env = Envelope::new(
                "family sweep",
                serde_json::json!({ "d": d, "m_list": m_list }),
                serde_json::json!({ "rows": m_list.len() }),
                24,
            );
            Ok((env, OutputFormat::Silent, 0))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_search(
    max_degree: u32,
    bound: i64,
    metric: &str,
    top: usize,
    checkpoint: Option<PathBuf>,
    workers: Option<usize>,
    out: &PathBuf,
) -> Result<Envelope> {
    let metric = Metric::from_str(metric)?;
    let search_box = SearchBox::new(max_degree, bound)?;
    let opts = SearchOptions {
        top_k: top.max(1),
        checkpoint,
        exec: ExecMode::Parallel,
        ..Default::default()
    };
    let outcome = match workers {
        Some(n) => {
            sepkit_core::exec::with_workers(n.max(1), || search_records(&search_box, metric, &opts))?
        }
        None => search_records(&search_box, metric, &opts)?,
    };
    let json = serde_json::to_string_pretty(&outcome.records).expect("records serialize");
    std::fs::write(out, &json)?;
    let csv_path = out.with_extension("csv");
    let mut csv = String::from("coeffs,metric,lower,upper,witness_real\n");
    for r in &outcome.records {
        csv.push_str(&format!(
            "\"{}\",{},{},{},\"{:?}\"\n",
            r.coeffs.join(","),
            r.metric,
            r.value_lower,
            r.value_upper,
            r.witness_real,
        ));
    }
    std::fs::write(&csv_path, &csv)?;
    Ok(Envelope::new(
        "search",
        serde_json::json!({
            "max_degree": max_degree,
            "bound": bound,
            "metric": metric.to_string(),
            "top": top,
            "out": out.display().to_string(),
        }),
        serde_json::json!({
            "records": serde_json::to_value(&outcome.records).unwrap(),
            "counters": serde_json::to_value(outcome.counters).unwrap(),
            "csv": csv_path.display().to_string(),
        }),
        0,
    ))
}

fn run(cli: Cli) -> Result<(Envelope, OutputFormat, i32)> {
    match cli.command {
        Command::Poly { op } => {
            let (env, format) = match op {
                PolyOp::Eval { poly, at, format } => {
                    let p = IntPolynomial::parse(&poly)?;
                    let t = parse_rational(&at)?;
                    let v = p.evaluate_exact(&t);
                    (
                        Envelope::new(
                            "poly eval",
                            serde_json::json!({"poly": p.to_coeff_string(), "at": at}),
                            serde_json::json!({"value": v.to_string()}),
                            0,
                        ),
                        format,
                    )
                }
                PolyOp::Resultant { p, q, format } => {
                    let pp = IntPolynomial::parse(&p)?;
                    let qq = IntPolynomial::parse(&q)?;
                    let r = poly::resultant(&pp, &qq)?;
                    (
                        Envelope::new(
                            "poly resultant",
                            serde_json::json!({"p": pp.to_coeff_string(), "q": qq.to_coeff_string()}),
                            serde_json::json!({"resultant": r.to_string()}),
                            0,
                        ),
                        format,
                    )
                }
                PolyOp::Disc { poly, format } => {
                    let p = IntPolynomial::parse(&poly)?;
                    let d = poly::discriminant(&p)?;
                    (
                        Envelope::new(
                            "poly disc",
                            serde_json::json!({"poly": p.to_coeff_string()}),
                            serde_json::json!({
                                "discriminant": d.to_string(),
                                "separable": d.to_string() != "0",
                            }),
                            0,
                        ),
                        format,
                    )
                }
                PolyOp::Squarefree { poly, format } => {
                    let p = IntPolynomial::parse(&poly)?;
                    let sf = poly::squarefree_part(&p)?;
                    (
                        Envelope::new(
                            "poly squarefree",
                            serde_json::json!({"poly": p.to_coeff_string()}),
                            serde_json::json!({
                                "coeffs": sf.to_coeff_string(),
                                "pretty": sf.to_pretty_string(),
                            }),
                            0,
                        ),
                        format,
                    )
                }
            };
            Ok((env, OutputFormat::from(format), 0))
        }
        Command::Sep(args) => {
            let fmt = OutputFormat::from(args.format);
            let (env, code) = run_separation(&args, false)?;
            Ok((env, fmt, code))
        }
        Command::Abssep(args) => {
            let fmt = OutputFormat::from(args.format);
            let (env, code) = run_separation(&args, true)?;
            Ok((env, fmt, code))
        }
        Command::Bounds { degree, height, maxmod, precision, format } => {
            let env = run_bounds(degree, &height, maxmod.as_deref(), precision)?;
            Ok((env, OutputFormat::from(format), 0))
        }
        Command::Family { op } => run_family(&op),
        Command::Search { max_degree, bound, metric, top, checkpoint, workers, out, format } => {
            let env = run_search(max_degree, bound, &metric, top, checkpoint, workers, &out)?;
            Ok((env, OutputFormat::from(format), 0))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok((envelope, format, code)) => {
            envelope.print(format);
            std::process::exit(code);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> OutputFormat {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Text => OutputFormat::Text,
        }
    }
}
