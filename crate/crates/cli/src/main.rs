//! `quadzero`: batch front end for the bound engine, form and pencil
//! analysis, and Hensel lifting.
//!
//! Exit codes: 0 success or true, 2 a well-formed answer of false, 1 usage
//! or input errors, 3 an enumeration or search cap was exceeded.

mod text;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quadzero::bound::{self, DEFAULT_SEARCH_CEILING};
use quadzero::io;
use quadzero::pencil::{DEFAULT_ENUMERATION_CAP, DEFAULT_SUBSPACE_CAP, DEFAULT_TRIAL_LIMIT};
use quadzero::selftest::{self, SelftestOptions};
use quadzero::{Caps, Error};

#[derive(Parser, Debug)]
#[command(name = "quadzero", version, about = "Common zeros of quadratic forms over finite and p-adic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest number of vectors (q^n or q^r) any exhaustive enumeration may visit.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP, global = true)]
    max_enum: u64,
    /// Largest number of subspaces the minimization check may visit.
    #[arg(long, default_value_t = DEFAULT_SUBSPACE_CAP, global = true)]
    max_subspaces: u64,
    /// Random trials when searching for a non-singular zero.
    #[arg(long, default_value_t = DEFAULT_TRIAL_LIMIT, global = true)]
    trials: u64,
    /// Upper end of the prime-power search.
    #[arg(long, default_value_t = DEFAULT_SEARCH_CEILING, global = true)]
    ceiling: u64,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..), global = true)]
    workers: Option<u32>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate sigma1 + sigma2 exactly and decide admissibility.
    Bound {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        q: u64,
    },
    /// Least admissible prime power for (r, n).
    MinQ {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Minimal prime powers for r = 3, 4, 8 against the reference thresholds.
    #[command(visible_alias = "corollary1")]
    Thresholds,
    /// Certify the large-q regime n >= r^2 + 1, r >= 5 by enclosures.
    #[command(visible_alias = "corollary2")]
    LargeQ {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        q: u64,
    },
    /// Rank, matrix rank and canonical shape of a single form.
    Rank { file: PathBuf },
    /// Rank distribution over every combination of a pencil.
    Spectrum { file: PathBuf },
    /// Common zeros of a pencil, split into non-singular and singular ones.
    Zeros { file: PathBuf },
    /// Exhaustive minimization check with a witness subspace.
    Minimized { file: PathBuf },
    /// Hensel-lift a non-singular zero modulo p to the requested precision.
    Lift { file: PathBuf },
    /// Run the built-in checks on small corpora.
    Selftest {
        /// Replace the GF(4) modulus by a reducible polynomial.
        #[arg(long, hide = true)]
        corrupt_modulus: bool,
    },
}

enum Failure {
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

/// A report and whether its answer is affirmative.
struct Outcome {
    report: Value,
    ok: bool,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parsed<T>(path: &Path, parse: impl Fn(&str) -> quadzero::Result<T>) -> Result<T, Failure> {
    parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn run(cmd: &Command, g: &Global) -> Result<Outcome, Failure> {
    let caps = Caps { enumeration: g.max_enum, subspaces: g.max_subspaces, trials: g.trials, seed: g.seed };
    Ok(match cmd {
        Command::Bound { r, n, q } => {
            let rep = bound::admissible(*r, *n, *q)?;
            Outcome { ok: rep.admissible, report: io::bound_report_json(&rep) }
        }
        Command::MinQ { r, n } => {
            let m = bound::minimal_admissible_prime_power(*r, *n, g.ceiling)?;
            Outcome { ok: true, report: io::minimal_q_json(&m) }
        }
        Command::Thresholds => {
            let rows = bound::threshold_table(g.ceiling)?;
            Outcome { ok: true, report: io::thresholds_json(&rows) }
        }
        Command::LargeQ { r, n, q } => {
            let c = bound::large_q_certificate(*r, *n, *q)?;
            Outcome { ok: c.certified, report: io::large_q_json(&c) }
        }
        Command::Rank { file } => {
            let form = parsed(file, io::parse_form)?;
            Outcome { ok: true, report: io::rank_report_json(&form) }
        }
        Command::Spectrum { file } => {
            let p = parsed(file, io::parse_pencil)?;
            Outcome { ok: true, report: io::spectrum_json(&p.rank_spectrum(caps.enumeration)?) }
        }
        Command::Zeros { file } => {
            let p = parsed(file, io::parse_pencil)?;
            let rep = p.count_singular_zeros(caps.enumeration)?;
            Outcome { ok: true, report: io::singular_report_json(&rep) }
        }
        Command::Minimized { file } => {
            let p = parsed(file, io::parse_pencil)?;
            let rep = p.is_minimized(caps.subspaces)?;
            Outcome { ok: rep.minimized, report: io::minimization_json(&rep) }
        }
        Command::Lift { file } => {
            let req = parsed(file, io::parse_system)?;
            if !req.system.is_nonsingular_zero(&req.zero)? {
                let report = json!({
                    "lifted": false,
                    "reason": "the starting point is not a non-singular zero modulo p",
                });
                return Ok(Outcome { ok: false, report });
            }
            let trace = req.system.hensel_lift_traced(&req.zero, req.precision)?;
            let report = json!({
                "lifted": true,
                "result": io::padic_json(&trace.result),
                "columns": trace.columns.iter().map(|c| c + 1).collect::<Vec<_>>(),
                "residual_valuations": trace.valuations,
            });
            Outcome { ok: true, report }
        }
        Command::Selftest { corrupt_modulus } => {
            let results = selftest::run(SelftestOptions { seed: g.seed, corrupt_modulus: *corrupt_modulus });
            let ok = results.iter().all(|r| r.passed);
            let checks: Vec<Value> = results
                .iter()
                .map(|r| {
                    json!({
                        "check": r.name,
                        "result": if r.passed { "PASS" } else { "FAIL" },
                        "ms": r.millis,
                        "detail": r.detail,
                    })
                })
                .collect();
            Outcome { ok, report: json!({ "passed": ok, "checks": checks }) }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(k) = cli.global.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    if matches!(cli.command, Command::Selftest { corrupt_modulus: true }) {
        // Injected faults surface as panics inside checks; keep stderr readable.
        std::panic::set_hook(Box::new(|_| {}));
    }
    match run(&cli.command, &cli.global) {
        Ok(out) => {
            match cli.global.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.report).expect("serializable")),
                Format::Text => print!("{}", text::render(&out.report)),
            }
            ExitCode::from(if out.ok { 0 } else { 2 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
