//! `qtheta`: verify theta/eta identities, print coefficient tables, list
//! Ramanujan tau values and time the core computations.
//!
//! Exit status: 0 when every requested check matched, 1 on a mismatch or an
//! internal failure, 2 on a usage or configuration error.

mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use qtheta_core::lattice::VandermondeSign;
use qtheta_core::special::{eta_power, theta_component, theta_sum};
use qtheta_core::verify::{self, CheckParams, IdentityRegistry, VerificationReport, DEFAULT_MAX_N};
use qtheta_core::wronskian::{h_r, wronskian_determinant, wronskian_lattice, MethodRegistry, ThetaVector};
use qtheta_core::{Context, Error, QExponent, ZetaSeries};
use rayon::prelude::*;

use crate::output::{emit_coeffs, emit_report, emit_tau, Format};

/// Overrides the default worker count when `--threads` is absent.
const THREADS_ENV: &str = "QTHETA_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "qtheta",
    version,
    about = "Exact q-series checks for theta functions and eta powers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check one or more identities coefficient by coefficient.
    Verify {
        /// Comma-separated identity names, or `all`.
        #[arg(long, default_value = "theorem1")]
        identity: String,
        #[arg(long, default_value_t = 3)]
        n: u32,
        /// Exclusive truncation order, as `a/b` or an integer.
        #[arg(long, default_value = "3")]
        order: String,
        /// Wronskian method for the identities that use one.
        #[arg(long, default_value = "lattice")]
        method: String,
        /// Number of tau values for the `tau` identity.
        #[arg(long, default_value_t = 10)]
        count: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print the coefficients of a named series.
    Coeffs {
        #[arg(long, value_enum)]
        series: SeriesName,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Power of eta.
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Component index of theta_{n,i}, in 1..=n.
        #[arg(long, default_value_t = 1)]
        i: u32,
        /// Zeta index of h_r.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, default_value = "lattice")]
        method: String,
        #[arg(long)]
        order: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Ramanujan tau(m) for m = 1..=count, computed two independent ways.
    Tau {
        #[arg(long, default_value_t = 10)]
        count: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Wall-clock timings as CSV.
    Bench {
        /// Comma-separated odd n values.
        #[arg(long, default_value = "3,5,7")]
        n: String,
        /// Comma-separated orders.
        #[arg(long, default_value = "2,3")]
        order: String,
        #[arg(long, default_value_t = 3)]
        repeat: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum SeriesName {
    EtaPower,
    Theta,
    ThetaComponent,
    #[value(name = "h_r")]
    HR,
    Wronskian,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Usage(_) | Error::NotRepresentable { .. } => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn parse_order(s: &str) -> Result<QExponent, Failure> {
    let order: QExponent = s.parse()?;
    if !order.is_positive() {
        return Err(Failure::Usage(format!("order must be positive, got {s}")));
    }
    Ok(order)
}

fn require_odd(n: u32) -> Result<(), Failure> {
    if n == 0 || n.is_multiple_of(2) {
        return Err(Failure::Usage(format!("n must be odd, got {n}")));
    }
    Ok(())
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("cannot parse {what} {v:?}")))
        })
        .collect()
}

fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool, Failure> {
    let from_env = || std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok());
    let count = match threads.or_else(from_env) {
        Some(0) => return Err(Failure::Usage("thread count must be positive".into())),
        Some(t) => t,
        None => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(count)
        .build()
        .map_err(|e| Failure::Internal(e.to_string()))
}

#[allow(clippy::too_many_arguments)]
fn run_verify(
    identity: &str,
    n: u32,
    order: &str,
    method: &str,
    count: u32,
    max_n: u32,
    format: Format,
    threads: Option<usize>,
) -> Result<bool, Failure> {
    let registry = IdentityRegistry::with_builtins();
    let names: Vec<String> = if identity == "all" {
        registry.names().into_iter().map(String::from).collect()
    } else {
        identity.split(',').map(|s| s.trim().to_string()).collect()
    };
    let mut params = CheckParams::new(n, parse_order(order)?).with_method(MethodRegistry::with_builtins().get(method)?);
    params.count = count;
    params.max_n = max_n;
    // Reject bad names and parameters before doing any work.
    for name in &names {
        let id = registry.get(name)?;
        if id.uses_n() {
            require_odd(n)?;
            if n > max_n {
                return Err(Failure::Usage(format!("n = {n} exceeds the cap of {max_n}")));
            }
        }
    }
    let pool = thread_pool(threads)?;
    let reports: Vec<Result<VerificationReport, Error>> =
        pool.install(|| names.par_iter().map(|name| registry.run(name, &params)).collect());
    let mut all_matched = true;
    for report in reports {
        let report = report?;
        all_matched &= report.matched;
        println!("{}", emit_report(&report, format));
    }
    Ok(all_matched)
}

#[allow(clippy::too_many_arguments)]
fn build_series(
    series: SeriesName,
    n: u32,
    k: u32,
    i: u32,
    r: i64,
    method: &str,
    order: &str,
) -> Result<ZetaSeries, Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be positive".into()));
    }
    let order = Context::for_n(n).order(parse_order(order)?);
    let s = match series {
        SeriesName::EtaPower => eta_power(k, order)?.into(),
        SeriesName::Theta => theta_sum(order)?,
        SeriesName::ThetaComponent => {
            require_odd(n)?;
            theta_component(n, i, order)?
        }
        SeriesName::HR => {
            require_odd(n)?;
            h_r(n, r, order, VandermondeSign::Determinant)?.into()
        }
        SeriesName::Wronskian => {
            require_odd(n)?;
            MethodRegistry::with_builtins().get(method)?.compute(n, order)?
        }
    };
    Ok(s)
}

fn run_bench(ns: &str, orders: &str, repeat: u32) -> Result<(), Failure> {
    let ns: Vec<u32> = parse_list(ns, "n")?;
    let orders: Vec<String> = parse_list(orders, "order")?;
    for n in &ns {
        require_odd(*n)?;
    }
    let mut out = csv::Writer::from_writer(std::io::stdout());
    out.write_record(["task", "n", "order", "best_us"])?;
    let lattice = qtheta_core::wronskian::Lattice::default();
    for &n in &ns {
        for order in &orders {
            let order = Context::for_n(n).order(parse_order(order)?);
            type Task<'a> = Box<dyn Fn() -> Result<(), Error> + 'a>;
            let tasks: [(&str, Task); 4] = [
                ("eta_power", Box::new(|| eta_power(n * n - 1, order).map(drop))),
                (
                    "wronskian_lattice",
                    Box::new(|| wronskian_lattice(n, order, VandermondeSign::Determinant).map(drop)),
                ),
                (
                    "wronskian_determinant",
                    Box::new(|| wronskian_determinant(&ThetaVector::new(n, order)?).map(drop)),
                ),
                (
                    "verify_theorem1",
                    Box::new(|| verify::verify_theorem1(n, order, &lattice).map(drop)),
                ),
            ];
            for (name, task) in &tasks {
                let mut best = u128::MAX;
                for _ in 0..repeat.max(1) {
                    let start = Instant::now();
                    task()?;
                    best = best.min(start.elapsed().as_micros());
                }
                out.write_record([name.to_string(), n.to_string(), order.to_string(), best.to_string()])?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Verify {
            identity,
            n,
            order,
            method,
            count,
            max_n,
            format,
            threads,
        } => run_verify(&identity, n, &order, &method, count, max_n, format, threads),
        Command::Coeffs {
            series,
            n,
            k,
            i,
            r,
            method,
            order,
            format,
        } => {
            let s = build_series(series, n, k, i, r, &method, &order)?;
            let text = emit_coeffs(&s, format);
            match format {
                Format::Json => println!("{text}"),
                Format::Text => print!("{text}"),
            }
            Ok(true)
        }
        Command::Tau { count, format } => {
            let (values, report) = verify::ramanujan_tau(count)?;
            let text = emit_tau(&values, &report, format);
            match format {
                Format::Json => println!("{text}"),
                Format::Text => print!("{text}"),
            }
            Ok(report.matched)
        }
        Command::Bench { n, order, repeat } => run_bench(&n, &order, repeat).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
