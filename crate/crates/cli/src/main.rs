use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use su_exponent::bounds::{self, DeltaParams, Format};
use su_exponent::polysum::binom_exact;
use su_exponent::stirling::{self, EpOptions, Precision};
use su_exponent::{
    carries, mstirling_mod, ord_factorial, ord_int, stable_params, stirling_exact, trunc_val,
    CheckName, Error, Prime, StructuredExponent, TruncatedValuation,
};

const EXIT_VIOLATION: u8 = 1;
const EXIT_UNDETERMINED: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "suexp",
    version,
    about = "p-adic Stirling valuations and SU(n) exponent bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a single value.
    Compute(ComputeArgs),
    /// Emit a table.
    Table(TableArgs),
    /// Sweep a check over a parameter grid.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Subject {
    Ord,
    OrdFactorial,
    Tau,
    Binom,
    Stirling,
    Mstirling,
    Ep,
    Stable,
    Bound,
    Delta,
}

#[derive(Args)]
struct ComputeArgs {
    subject: Subject,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    /// Exponent: decimal, or `[c*]p^L[+d]`; a literal `L` is replaced by `--L`.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    /// Tower height for `L` in `--k`: a number or `auto` (max(N, N0)).
    #[arg(long = "L")]
    big_l: Option<String>,
    #[arg(long)]
    m: Option<u64>,
    /// Integer argument of `ord`.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long)]
    alpha: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    baseline: Option<i64>,
    #[arg(long)]
    l_from: Option<u64>,
    #[arg(long)]
    l_to: Option<u64>,
    /// Working precision E, or `auto`.
    #[arg(long, env = "SUEXP_PRECISION", default_value = "auto")]
    precision: String,
    /// Number of m values scanned past n before extensions.
    #[arg(long, default_value_t = stirling::DEFAULT_WINDOW)]
    window: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    One,
    Two,
    Delta,
    N29,
}

#[derive(Args)]
struct TableArgs {
    which: Which,
    #[arg(long, default_value_t = bounds::GOLDEN_TABLE1_FIRST_N)]
    from: u64,
    #[arg(long, default_value_t = bounds::GOLDEN_TABLE1_FIRST_N + 22)]
    to: u64,
    /// Compare with the embedded reference values; exit 1 on any mismatch.
    #[arg(long)]
    golden: bool,
    /// Add an observed-maximum column over finite k in [n, n + K].
    #[arg(long, value_name = "K")]
    max_search: Option<u64>,
    #[arg(long, default_value = "md")]
    format: String,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    alpha: Option<u32>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    baseline: Option<i64>,
    #[arg(long)]
    l_from: Option<u64>,
    #[arg(long)]
    l_to: Option<u64>,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long, default_value_t = 29)]
    seed: u64,
    #[arg(long, env = "SUEXP_JOBS", default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct VerifyArgs {
    check: String,
    /// Grid spec, or `default`.
    #[arg(long, default_value = "default")]
    grid: String,
    #[arg(long, env = "SUEXP_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Overrides the grid's sampling seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Treat conjecture non-equalities as failures.
    #[arg(long)]
    strict: bool,
    #[arg(long, default_value = "md")]
    format: String,
}

/// An error tagged with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

fn from_lib(flag: &str, e: Error) -> Failure {
    let code = match e {
        Error::Parse { .. }
        | Error::InvalidArgument(_)
        | Error::NotPrime(_)
        | Error::UnknownCheck(_)
        | Error::Capacity(_) => EXIT_USAGE,
        Error::Undetermined { .. } => EXIT_UNDETERMINED,
        _ => EXIT_VIOLATION,
    };
    let message = if flag.is_empty() {
        e.to_string()
    } else {
        format!("{flag}: {e}")
    };
    Failure { code, message }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::usage(format!("missing required flag {flag}")))
}

fn prime(v: Option<u64>) -> Result<Prime, Failure> {
    Prime::new(need(v, "--p")?).map_err(|e| from_lib("--p", e))
}

fn format_arg(s: &str) -> Result<Format, Failure> {
    Format::from_str(s).map_err(|e| from_lib("--format", e))
}

fn precision_arg(s: &str) -> Result<Precision, Failure> {
    match s {
        "auto" => Ok(Precision::Auto),
        _ => match s.parse::<u32>() {
            Ok(e) if e >= 1 => Ok(Precision::Fixed(e)),
            _ => Err(Failure::usage(format!(
                "--precision: expected auto or an integer >= 1, got {s:?}"
            ))),
        },
    }
}

/// `--k` with the placeholder `L` resolved.
fn exponent_arg(
    args: &ComputeArgs,
    p: Option<Prime>,
    n: Option<u64>,
) -> Result<(StructuredExponent, Option<u64>), Failure> {
    let raw = need(args.k.as_deref(), "--k")?;
    let l = if raw.contains('L') {
        let l = match args.big_l.as_deref() {
            None => return Err(Failure::usage("--k mentions L but --L is not given")),
            Some("auto") => {
                let p = p.ok_or_else(|| Failure::usage("--L auto needs --p"))?;
                let n = need(n, "--n")?;
                stable_params(p, n, stirling::DEFAULT_WINDOW)
                    .map_err(|e| from_lib("--L", e))?
                    .l_min()
            }
            Some(v) => v.parse().map_err(|_| {
                Failure::usage(format!("--L: expected auto or an integer, got {v:?}"))
            })?,
        };
        Some(l)
    } else {
        None
    };
    let text = match l {
        Some(l) => raw.replace('L', &l.to_string()),
        None => raw.to_string(),
    };
    let k = StructuredExponent::from_str(&text).map_err(|e| from_lib("--k", e))?;
    Ok((k, l))
}

fn run_compute(args: &ComputeArgs) -> Result<u8, Failure> {
    let out = |s: String| {
        println!("{s}");
        Ok(0)
    };
    match args.subject {
        Subject::Ord => {
            let p = prime(args.p)?;
            let x = need(args.x.as_deref(), "--x")?;
            let x = BigInt::from_str(x)
                .map_err(|_| Failure::usage(format!("--x: expected an integer, got {x:?}")))?;
            out(ord_int(p, &x).to_string())
        }
        Subject::OrdFactorial => {
            let p = prime(args.p)?;
            let m = need(args.m.or(args.n), "--m")?;
            out(ord_factorial(p, m).to_string())
        }
        Subject::Tau => {
            let p = prime(args.p)?;
            out(carries(p, need(args.a, "--a")?, need(args.b, "--b")?).to_string())
        }
        Subject::Binom => {
            let n = need(args.n, "--n")?;
            let k = need(args.k.as_deref(), "--k")?;
            let k: i64 = k
                .parse()
                .map_err(|_| Failure::usage(format!("--k: expected an integer, got {k:?}")))?;
            out(binom_exact(n, k).to_string())
        }
        Subject::Stirling => {
            let k = need(args.k.as_deref(), "--k")?;
            let k: u64 = k
                .parse()
                .map_err(|_| Failure::usage(format!("--k: expected an integer, got {k:?}")))?;
            let s = stirling_exact(k, need(args.m, "--m")?).map_err(|e| from_lib("--k", e))?;
            out(s.to_string())
        }
        Subject::Mstirling => {
            let p = prime(args.p)?;
            let (k, _) = exponent_arg(args, Some(p), args.n)?;
            let m = need(args.m, "--m")?;
            let e = match precision_arg(&args.precision)? {
                Precision::Fixed(e) => e,
                Precision::Auto => {
                    return Err(Failure::usage("--precision: mstirling needs an explicit E"))
                }
            };
            let r = mstirling_mod(&k, m, p, e).map_err(|e| from_lib("", e))?;
            out(format!(
                "{} (mod {p}^{e}, ord {})",
                r.residue(),
                trunc_val(&r)
            ))
        }
        Subject::Ep => {
            let p = prime(args.p)?;
            let n = need(args.n, "--n")?;
            let (k, l) = exponent_arg(args, Some(p), Some(n))?;
            if args.window == 0 {
                return Err(Failure::usage("--window: must be >= 1"));
            }
            let opts = EpOptions {
                window: args.window,
                precision: precision_arg(&args.precision)?,
                ..EpOptions::default()
            };
            let res = stirling::e_p(p, n, &k, &opts).map_err(|e| from_lib("", e))?;
            let mut meta = vec![format!("{}", res.certificate)];
            if let Some(l) = l {
                meta.push(format!("L={l}"));
            }
            meta.push(format!("E={}", res.precision));
            meta.push(format!("m={}..{}", res.m_scanned.0, res.m_scanned.1));
            let value = match res.value {
                TruncatedValuation::Exact(v) => v.to_string(),
                other => other.to_string(),
            };
            if res.certified {
                out(format!("{value} (certified: {})", meta.join(", ")))
            } else {
                eprintln!("{value} (uncertified: {})", meta.join(", "));
                Ok(EXIT_UNDETERMINED)
            }
        }
        Subject::Stable => {
            let p = prime(args.p)?;
            let n = need(args.n, "--n")?;
            let sp = stable_params(p, n, args.window).map_err(|e| from_lib("", e))?;
            let line = format!(
                "N={} N0={} L0={} m0={} (m={}..{})",
                sp.big_n, sp.n0, sp.l0, sp.m0, sp.m_scanned.0, sp.m_scanned.1
            );
            if sp.certified {
                out(format!("{line} certified"))
            } else {
                eprintln!("{line} uncertified");
                Ok(EXIT_UNDETERMINED)
            }
        }
        Subject::Bound => {
            let p = prime(args.p)?;
            let r =
                bounds::bound_report(p, need(args.n, "--n")?).map_err(|e| from_lib("--n", e))?;
            let old = r.old_bound.map_or("n/a".to_string(), |v| v.to_string());
            println!("new={} old={old} restated={}", r.new_bound, r.restated);
            if let Some(note) = r.note {
                eprintln!("note: {note}");
            }
            Ok(0)
        }
        Subject::Delta => {
            let params = delta_params(
                args.p,
                args.alpha,
                args.n,
                args.baseline,
                args.l_from,
                args.l_to,
            )?;
            let d = bounds::emit_delta(&params).map_err(|e| from_lib("", e))?;
            out(d
                .iter()
                .map(|(_, v)| v.to_string())
                .collect::<Vec<_>>()
                .join(","))
        }
    }
}

fn delta_params(
    p: Option<u64>,
    alpha: Option<u32>,
    n: Option<u64>,
    baseline: Option<i64>,
    l_from: Option<u64>,
    l_to: Option<u64>,
) -> Result<DeltaParams, Failure> {
    let d = DeltaParams::default();
    Ok(DeltaParams {
        p: match p {
            Some(_) => prime(p)?,
            None => d.p,
        },
        alpha: alpha.unwrap_or(d.alpha),
        n: n.unwrap_or(d.n),
        baseline: baseline.unwrap_or(d.baseline),
        l_from: l_from.unwrap_or(d.l_from),
        l_to: l_to.unwrap_or(d.l_to),
    })
}

fn report_golden(mismatches: &[bounds::GoldenMismatch]) -> u8 {
    if mismatches.is_empty() {
        eprintln!("golden: all entries match");
        0
    } else {
        for m in mismatches {
            eprintln!("golden mismatch: {m}");
        }
        EXIT_VIOLATION
    }
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    if jobs == 0 {
        return Err(Failure::usage("--jobs: must be >= 1"));
    }
    Ok(su_exponent::with_worker_pool(jobs, f))
}

fn run_table(args: &TableArgs) -> Result<u8, Failure> {
    let format = format_arg(&args.format)?;
    match args.which {
        Which::One => {
            let rows = with_pool(args.jobs, || {
                bounds::emit_table1(args.from, args.to, args.max_search)
            })?
            .map_err(|e| from_lib("", e))?;
            print!("{}", bounds::render_table1(&rows, format));
            Ok(if args.golden {
                report_golden(&bounds::golden_table1(&rows))
            } else {
                0
            })
        }
        Which::Two => {
            let t = bounds::emit_table2();
            print!("{}", bounds::render_table2(&t, format));
            Ok(if args.golden {
                report_golden(&bounds::golden_table2(&t))
            } else {
                0
            })
        }
        Which::Delta => {
            let params = delta_params(
                args.p,
                args.alpha,
                args.n,
                args.baseline,
                args.l_from,
                args.l_to,
            )?;
            let d = bounds::emit_delta(&params).map_err(|e| from_lib("", e))?;
            print!("{}", bounds::render_delta(&d, format));
            if args.golden {
                if params != DeltaParams::default() {
                    return Err(Failure::usage(
                        "--golden: the reference list uses the default delta parameters",
                    ));
                }
                return Ok(report_golden(&bounds::golden_delta(&d)));
            }
            Ok(0)
        }
        Which::N29 => {
            let checks = with_pool(args.jobs, || {
                bounds::n29_spot_check(args.samples, args.seed)
            })?
            .map_err(|e| from_lib("", e))?;
            println!("k,predicted,observed,certified,matches");
            for c in &checks {
                println!(
                    "{},{},{},{},{}",
                    c.k, c.predicted, c.observed, c.certified, c.matches
                );
            }
            let hits = checks.iter().filter(|c| c.matches).count();
            eprintln!(
                "{hits}/{} samples match the predicted pattern (informational)",
                checks.len()
            );
            Ok(0)
        }
    }
}

fn run_verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let check = CheckName::from_str(&args.check).map_err(|e| from_lib("check", e))?;
    let format = format_arg(&args.format)?;
    if format == Format::Csv {
        return Err(Failure::usage("--format: verify reports are md or json"));
    }
    if args.jobs == 0 {
        return Err(Failure::usage("--jobs: must be >= 1"));
    }
    let text = if args.grid.trim() == "default" {
        check.default_grid()
    } else {
        args.grid.as_str()
    };
    let mut grid = su_exponent::GridSpec::parse(text).map_err(|e| from_lib("--grid", e))?;
    if let Some(seed) = args.seed {
        grid.seed = seed;
    }
    let report =
        su_exponent::verify::sweep(check, &grid, args.jobs).map_err(|e| from_lib("--grid", e))?;
    match format {
        Format::Json => println!("{}", report.to_json()),
        _ => print!("{}", report.to_markdown()),
    }
    eprintln!(
        "{} instances in {:.2?}",
        report.checked + report.skipped,
        report.wall_time
    );
    let failing = !report.violations.is_empty() && (!check.is_conjecture() || args.strict);
    Ok(if failing {
        EXIT_VIOLATION
    } else if report.undetermined > 0 {
        EXIT_UNDETERMINED
    } else {
        0
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Compute(a) => run_compute(a),
        Command::Table(a) => run_table(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
