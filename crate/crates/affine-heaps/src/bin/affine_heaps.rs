//! Command-line surface: counting tables, exact series, bijection
//! conversions, and the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain
//! error (a payload outside a bijection's domain).

use affine_heaps::formats::{convert, ConvertError, CONVERSIONS};
use affine_heaps::oracle::{enumerate_fc_elements, ClassTag};
use affine_heaps::qformulas::{by_name, SERIES_NAMES};
use affine_heaps::series::Trunc;
use affine_heaps::suites::{run_all, run_suite, Scale, SUITE_NAMES};
use clap::{Parser, Subcommand};
use std::io::Read;

#[derive(Parser)]
#[command(
    name = "affine-heaps",
    version,
    about = "Exact enumeration of 321-avoiding affine permutations, their diagrams, \
             heaps, walks, and periodic parallelogram polyominoes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count 321-avoiding elements by Coxeter length
    Count {
        /// Element class to count
        #[arg(long, default_value = "affine",
              value_parser = ["affine", "finite", "affine-involution", "finite-involution"])]
        class: String,
        /// Window size (at least 2)
        #[arg(long)]
        n: usize,
        /// Largest Coxeter length to include
        #[arg(long, default_value_t = 10)]
        max_len: u64,
        /// Output format
        #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
        format: String,
    },
    /// Print a named generating series exactly, up to a truncation
    Series {
        /// Series name (see --help for the list)
        #[arg(long, help = format!("Series name, one of: {}", SERIES_NAMES.join(", ")))]
        name: String,
        /// Bound on the x exponent
        #[arg(long, default_value_t = 6)]
        x: u32,
        /// Bound on the y exponent
        #[arg(long, default_value_t = 4)]
        y: u32,
        /// Bound on the q exponent
        #[arg(long, default_value_t = 10)]
        q: u32,
    },
    /// Apply one direction of a bijection to one JSON payload
    Convert {
        /// Source object kind
        #[arg(long)]
        from: String,
        /// Target object kind
        #[arg(long)]
        to: String,
        /// The payload; read from standard input when omitted
        payload: Option<String>,
    },
    /// Run verification suites and report each check
    Verify {
        /// Suite name; all suites run when omitted
        #[arg(long, help = format!("Suite name, one of: {}", SUITE_NAMES.join(", ")))]
        suite: Option<String>,
        /// Largest window size the suites enumerate
        #[arg(long)]
        n_max: Option<usize>,
        /// Largest Coxeter length / object size the suites enumerate
        #[arg(long)]
        len_max: Option<u64>,
        /// Bound on the x exponent of series comparisons
        #[arg(long)]
        x: Option<u32>,
        /// Bound on the y exponent of series comparisons
        #[arg(long)]
        y: Option<u32>,
        /// Bound on the q exponent of series comparisons
        #[arg(long)]
        q: Option<u32>,
        /// Worker threads (default: AFFINE_HEAPS_JOBS, then the CPU count)
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn main() {
    std::process::exit(run(Cli::parse()));
}

fn usage_error(message: &str) -> i32 {
    eprintln!("error: {message}");
    2
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Count { class, n, max_len, format } => {
            if n < 2 {
                return usage_error(&format!("--n must be at least 2, got {n}"));
            }
            let tag = ClassTag::parse(&class).expect("validated by the parser");
            let table = enumerate_fc_elements(n, max_len, tag);
            match format.as_str() {
                "csv" => print!("{}", table.to_csv()),
                _ => println!("{}", serde_json::to_string(&table).expect("serializable")),
            }
            0
        }
        Command::Series { name, x, y, q } => match by_name(&name, Trunc::new(x, y, q)) {
            None => usage_error(&format!(
                "unknown series {name:?}; known names: {}",
                SERIES_NAMES.join(", ")
            )),
            Some(series) => {
                println!("{}", serde_json::to_string(&series).expect("serializable"));
                0
            }
        },
        Command::Convert { from, to, payload } => {
            let payload = match payload {
                Some(p) => p,
                None => {
                    let mut buf = String::new();
                    if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                        return usage_error(&format!("cannot read the payload: {e}"));
                    }
                    buf
                }
            };
            match convert(&from, &to, &payload) {
                Ok(json) => {
                    println!("{json}");
                    0
                }
                Err(e @ ConvertError::UnknownConversion { .. }) => {
                    let _ = CONVERSIONS; // documented in the error text
                    usage_error(&e.to_string())
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    3
                }
            }
        }
        Command::Verify { suite, n_max, len_max, x, y, q, jobs } => {
            let scale = Scale { n_max, len_max, x_max: x, y_max: y, q_max: q };
            let jobs = match resolve_jobs(jobs) {
                Ok(j) => j,
                Err(msg) => return usage_error(&msg),
            };
            let reports = match suite {
                Some(name) => match run_suite(&name, scale, jobs) {
                    None => {
                        return usage_error(&format!(
                            "unknown suite {name:?}; known suites: {}",
                            SUITE_NAMES.join(", ")
                        ))
                    }
                    Some(r) => vec![r],
                },
                None => run_all(scale, jobs),
            };
            for r in &reports {
                print!("{}", r.render_text());
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            println!(
                "overall: {} ({passed}/{} suites)",
                if passed == reports.len() { "PASS" } else { "FAIL" },
                reports.len()
            );
            if passed == reports.len() {
                0
            } else {
                1
            }
        }
    }
}

fn resolve_jobs(flag: Option<usize>) -> Result<usize, String> {
    if let Some(j) = flag {
        return Ok(j.max(1));
    }
    if let Ok(v) = std::env::var("AFFINE_HEAPS_JOBS") {
        return v
            .trim()
            .parse::<usize>()
            .map(|j| j.max(1))
            .map_err(|_| format!("AFFINE_HEAPS_JOBS must be a number, got {v:?}"));
    }
    Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}
