//! `nilzeta`: build, expand and verify the local zeta functions of `G_n`
//! from the command line.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nilzeta::oracle::{sublattice_count, CensusKind};
use nilzeta::ZetaKind;

use report::Report;

/// Largest `n` for which closed forms are built on request.
const N_MAX: usize = 8;
/// Largest `n` for the formula-only abscissa of `ζ^≤`.
const N_MAX_ABSCISSA: usize = 64;
const P_MAX: u64 = 97;
const K_MAX: usize = 64;
/// Upper bound on the number of lattices a single `count` may visit.
const CENSUS_BUDGET: u128 = 50_000_000;
const WORKERS_ENV: &str = "NILZETA_WORKERS";

#[derive(Parser)]
#[command(name = "nilzeta", version, about = "Local zeta functions of the class-2 nilpotent groups G_n")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Leq,
    Normal,
    Hat,
}

impl From<Kind> for ZetaKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Leq => ZetaKind::Subgroup,
            Kind::Normal => ZetaKind::Normal,
            Kind::Hat => ZetaKind::Hat,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Funeq,
    Lemmas,
    Descent,
    Typesum,
    Heisenberg,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed form as a factored rational function in p and t.
    Formula {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
    },
    /// Print the coefficients c_0..c_K of the expansion in t = p^-s.
    Expand {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        max_k: usize,
    },
    /// Count subalgebras or ideals by lattice census and compare with the series.
    Count {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        max_k: u32,
        /// Also write one CSV row per k to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run one verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Zeta kind for the funeq suite; all three when omitted.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// Print the abscissa of convergence.
    Abscissa {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
    },
}

struct UsageError(String);

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn check_n(n: usize, max: usize) -> Result<usize, UsageError> {
    if (2..=max).contains(&n) {
        Ok(n)
    } else {
        Err(UsageError(format!("--n must satisfy 2 <= n <= {max}, got {n}")))
    }
}

fn check_p(p: u64) -> Result<u64, UsageError> {
    if is_prime(p) && p <= P_MAX {
        Ok(p)
    } else {
        Err(UsageError(format!("--p must be a prime <= {P_MAX}, got {p}")))
    }
}

fn check_k(k: usize) -> Result<usize, UsageError> {
    if k <= K_MAX {
        Ok(k)
    } else {
        Err(UsageError(format!("--max-k must be <= {K_MAX}, got {k}")))
    }
}

fn required<T>(v: Option<T>, flag: &str, suite: &str) -> Result<T, UsageError> {
    v.ok_or_else(|| UsageError(format!("suite {suite} requires --{flag}")))
}

fn census_guard(n: usize, p: u64, max_k: u32) -> Result<(), UsageError> {
    let d = 2 * n - 1;
    let mut total: u128 = 0;
    for k in 0..=max_k {
        total = sublattice_count(d, p, k)
            .ok()
            .and_then(|c| total.checked_add(c))
            .filter(|&t| t <= CENSUS_BUDGET)
            .ok_or_else(|| {
                UsageError(format!(
                    "census for n={n} p={p} max-k={max_k} exceeds {CENSUS_BUDGET} lattices; lower --max-k"
                ))
            })?;
    }
    Ok(())
}

fn run(command: Command) -> Result<Report, UsageError> {
    let lib = |e: nilzeta::Error| UsageError(e.to_string());
    match command {
        Command::Formula { kind, n } => commands::formula(kind.into(), check_n(n, N_MAX)?).map_err(lib),
        Command::Expand { kind, n, p, max_k } => {
            commands::expand(kind.into(), check_n(n, N_MAX)?, check_p(p)?, check_k(max_k)?).map_err(lib)
        }
        Command::Count { kind, n, p, max_k, csv } => {
            let census = match kind {
                Kind::Leq => CensusKind::Subalgebra,
                Kind::Normal => CensusKind::Ideal,
                Kind::Hat => return Err(UsageError("count supports --kind leq or normal".into())),
            };
            let (n, p) = (check_n(n, N_MAX)?, check_p(p)?);
            check_k(max_k as usize)?;
            census_guard(n, p, max_k)?;
            commands::count(census, n, p, max_k, csv.as_deref()).map_err(lib)
        }
        Command::Verify { suite, kind, n, p, max_k } => match suite {
            Suite::Funeq => {
                let n = check_n(required(n, "n", "funeq")?, N_MAX)?;
                let kinds: Vec<ZetaKind> = match kind {
                    Some(k) => vec![k.into()],
                    None => ZetaKind::ALL.to_vec(),
                };
                commands::verify_funeq(&kinds, n).map_err(lib)
            }
            Suite::Lemmas => commands::verify_lemmas(check_n(required(n, "n", "lemmas")?, N_MAX)?).map_err(lib),
            Suite::Descent => commands::verify_descent(check_n(required(n, "n", "descent")?, N_MAX)?).map_err(lib),
            Suite::Typesum => {
                let n = check_n(required(n, "n", "typesum")?, N_MAX)?;
                let p = check_p(required(p, "p", "typesum")?)?;
                let k = check_k(required(max_k, "max-k", "typesum")?)?;
                commands::verify_typesum(n, p, k).map_err(lib)
            }
            Suite::Heisenberg => commands::verify_heisenberg().map_err(lib),
        },
        Command::Abscissa { kind, n } => {
            let max = if matches!(kind, Kind::Normal) { N_MAX } else { N_MAX_ABSCISSA };
            commands::abscissa(kind.into(), check_n(n, max)?).map_err(lib)
        }
    }
}

fn configure_workers() -> Result<(), UsageError> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let workers: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&w| w >= 1)
        .ok_or_else(|| UsageError(format!("{WORKERS_ENV} must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build_global()
        .map_err(|e| UsageError(format!("cannot start {workers} workers: {e}")))
}

fn usage_failure(msg: &str) -> ExitCode {
    eprintln!("nilzeta: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            return usage_failure(line.trim_start_matches("error: "));
        }
    };
    if let Err(UsageError(msg)) = configure_workers() {
        return usage_failure(&msg);
    }
    let report = match run(cli.command) {
        Ok(r) => r,
        Err(UsageError(msg)) => return usage_failure(&msg),
    };
    match cli.format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("report serialises")),
    }
    match report.first_failure() {
        Some(c) => {
            eprintln!("nilzeta: verification failed: {}", c.name);
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_up_to_the_ceiling() {
        let primes: Vec<u64> = (0..=P_MAX).filter(|&p| is_prime(p)).collect();
        assert_eq!(primes.len(), 25);
        assert_eq!(primes.first(), Some(&2));
        assert!(check_p(97).is_ok() && check_p(101).is_err() && check_p(1).is_err());
    }

    #[test]
    fn census_guard_scales_with_k() {
        assert!(census_guard(2, 2, 5).is_ok());
        assert!(census_guard(5, 97, 10).is_err());
    }
}
