use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use serde_json::json;

use weylreps::gns::{self, Direction, GnsVector};
use weylreps::sampling::DEFAULT_SEED;
use weylreps::schrodinger_oracle as oracle;
use weylreps::serial::{self, TermRecord};
use weylreps::verify::{self, Suite};
use weylreps::{rational, states, StateFunctional, WeylElement};

/// Exit code for failed property checks.
const EXIT_FAIL: u8 = 1;
/// Exit code for usage and parse errors.
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "weylreps", version, about = "Weyl algebra, nonregular representations and GNS checks")]
struct Cli {
    /// Seed for randomized sweeps; WEYLREPS_SEED takes precedence.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal-ordered product of two element files.
    Product { left: PathBuf, right: PathBuf },
    /// Evaluate a state on an element file.
    EvalState {
        /// position:<λ>, momentum:<μ>, vacuum, or a JSON state record
        #[arg(long)]
        state: String,
        element: PathBuf,
    },
    /// Gram matrix, positivity and canonical reductions for a list of words.
    GnsBuild {
        #[arg(long)]
        state: String,
        /// JSON array of element record lists
        words: PathBuf,
    },
    /// CSV of t ↦ ⟨Ω, π(G_t)Ω⟩ over a grid.
    ContinuityScan {
        #[arg(long)]
        state: String,
        /// U or V
        #[arg(long)]
        direction: String,
        /// comma-separated rationals, e.g. 0,1/8,1/64
        #[arg(long)]
        grid: String,
    },
    /// Exact invariant mean of a polynomial file, with a quadrature cross-check.
    Mean {
        poly: PathBuf,
        /// half-width of the averaging window for the quadrature
        #[arg(long, default_value_t = 1000.0)]
        n: f64,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// shorthand for --suite oracle
        #[arg(long)]
        oracle: bool,
    },
}

enum Failure {
    Usage(anyhow::Error),
    Checks,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn read_input(path: &Path) -> anyhow::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_element(path: &Path) -> anyhow::Result<WeylElement> {
    let text = read_input(path)?;
    serial::element_from_json(&text).with_context(|| format!("{}: parse error", path.display()))
}

fn parse_state(s: &str) -> anyhow::Result<StateFunctional> {
    s.parse().map_err(|e| anyhow!("{e}"))
}

fn complex_json(z: weylreps::Complex64) -> serde_json::Value {
    json!({ "re": z.re, "im": z.im })
}

fn effective_seed(flag: u64) -> anyhow::Result<u64> {
    match std::env::var("WEYLREPS_SEED") {
        Ok(v) => v.trim().parse().with_context(|| format!("WEYLREPS_SEED={v:?} is not an unsigned integer")),
        Err(_) => Ok(flag),
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::Product { left, right } => {
            let x = read_element(&left)?;
            let y = read_element(&right)?;
            writeln!(out, "{}", serial::element_to_json(&x.multiply(&y))).map_err(anyhow::Error::from)?;
        }
        Command::EvalState { state, element } => {
            let state = parse_state(&state)?;
            let x = read_element(&element)?;
            writeln!(out, "{}", complex_json(state.evaluate(&x))).map_err(anyhow::Error::from)?;
        }
        Command::GnsBuild { state, words } => {
            let state = parse_state(&state)?;
            let text = read_input(&words)?;
            let records: Vec<Vec<TermRecord>> =
                serde_json::from_str(&text).with_context(|| format!("{}: parse error", words.display()))?;
            let words = records
                .into_iter()
                .map(serial::element_from_records)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| anyhow!("{}: {e}", words.display()))?;
            if words.is_empty() {
                return Err(anyhow!("word list is empty").into());
            }
            let gram = states::gram_matrix(&state, &words);
            let rows: Vec<Vec<[f64; 2]>> =
                (0..gram.nrows()).map(|i| (0..gram.ncols()).map(|j| [gram[(i, j)].re, gram[(i, j)].im]).collect()).collect();
            let min_eig = states::check_positivity(&state, &words).map_err(|e| anyhow!("{e}"))?;
            let reductions: Option<Vec<serde_json::Value>> = match state {
                StateFunctional::Vacuum => None,
                _ => Some(
                    words
                        .iter()
                        .map(|w| {
                            let r = gns::reduce(&GnsVector::from_word(state.clone(), w.clone())).expect("position or momentum");
                            r.amplitudes.iter().map(|(k, c)| json!({ "key": k.to_string(), "re": c.re, "im": c.im })).collect()
                        })
                        .collect(),
                ),
            };
            let report = json!({
                "state": state,
                "gram": rows,
                "min_eigenvalue": min_eig,
                "positive": min_eig >= -1e-10,
                "regular": { "U": gns::is_regular_direction(&state, Direction::U), "V": gns::is_regular_direction(&state, Direction::V) },
                "reductions": reductions,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json")).map_err(anyhow::Error::from)?;
            if min_eig < -1e-10 {
                return Err(Failure::Checks);
            }
        }
        Command::ContinuityScan { state, direction, grid } => {
            let state = parse_state(&state)?;
            let direction: Direction = direction.parse().map_err(|e| anyhow!("{e}"))?;
            let grid = rational::parse_list(&grid).map_err(|e| anyhow!("{e}"))?;
            let rows = gns::continuity_scan(&state, direction, &grid).map_err(|e| anyhow!("{e}"))?;
            write!(out, "{}", serial::scan_to_csv(&rows)).map_err(anyhow::Error::from)?;
        }
        Command::Mean { poly, n } => {
            let text = read_input(&poly)?;
            let f = serial::poly_from_json(&text).with_context(|| format!("{}: parse error", poly.display()))?;
            let exact = f.invariant_mean();
            let quad = oracle::mean_quadrature(&f, n).map_err(|e| anyhow!("{e}"))?;
            let bound = f.truncation_constant() / n;
            let gap = (quad - exact).norm();
            let ok = gap <= bound + 1e-9;
            writeln!(out, "mean: {} {}", serial::format_real(exact.re), serial::format_real(exact.im))
                .map_err(anyhow::Error::from)?;
            writeln!(out, "quadrature (N = {n}): {} {}", quad.re, quad.im).map_err(anyhow::Error::from)?;
            writeln!(out, "gap {gap:.3e} <= bound {bound:.3e}: {}", if ok { "PASS" } else { "FAIL" })
                .map_err(anyhow::Error::from)?;
            if !ok {
                return Err(Failure::Checks);
            }
        }
        Command::Verify { suite, oracle } => {
            let suite: Suite = if oracle { Suite::Oracle } else { suite.parse().map_err(|e| anyhow!("{e}"))? };
            let seed = effective_seed(cli.seed)?;
            let report = verify::run(suite, seed);
            writeln!(out, "seed: {seed}").map_err(anyhow::Error::from)?;
            let mut current = "";
            for check in &report.checks {
                if check.suite != current {
                    current = check.suite;
                    writeln!(out, "== {current} ==").map_err(anyhow::Error::from)?;
                }
                writeln!(out, "{check}").map_err(anyhow::Error::from)?;
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            writeln!(out, "{} checks, {failed} failed", report.checks.len()).map_err(anyhow::Error::from)?;
            if !report.passed() {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(EXIT_FAIL),
        Err(Failure::Usage(e)) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
