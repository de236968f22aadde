//! Command-line driver: reads JSON pencil files, prints invariant records,
//! strict-equivalence and rank-one perturbation verdicts (with optional
//! brute-force witnesses over small prime fields), realizes invariant
//! records as canonical pencils, and runs decision-vs-search agreement
//! grids.
//!
//! Exit codes: 0 for success or an affirmative verdict, 1 for a negative
//! verdict, 2 for input or usage errors.

mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use io::{input_error, CliError, InvariantsJson, PencilJson};
use pencils::oracle::{brute_force_decide, exhaustive_agreement, sampled_agreement};
use pencils::perturb::decide;
use pencils::{DegreeSums, FieldSpec};

#[derive(Parser)]
#[command(
    name = "pencils",
    version,
    about = "Exact Kronecker invariants of matrix pencils and rank-one perturbation decisions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the complete strict-equivalence invariants of a pencil file.
    Invariants {
        /// JSON pencil file.
        file: PathBuf,
    },
    /// Test whether two pencil files are strictly equivalent.
    Equiv {
        /// First JSON pencil file.
        a: PathBuf,
        /// Second JSON pencil file.
        b: PathBuf,
    },
    /// Decide whether some rank-one pencil perturbation carries the first
    /// pencil to the second.
    Decide {
        /// JSON pencil file to perturb.
        a: PathBuf,
        /// Target JSON pencil file.
        b: PathBuf,
        /// Also search for an explicit witness (small prime fields only).
        #[arg(long)]
        witness: bool,
        /// Seed for the factorization steps inside the decision.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Answer the same question by brute force over all rank-one candidates
    /// (small prime fields only), reporting a witness when one exists.
    Oracle {
        /// JSON pencil file to perturb.
        a: PathBuf,
        /// Target JSON pencil file.
        b: PathBuf,
    },
    /// Build the canonical pencil realizing an invariants file.
    Realize {
        /// JSON invariants file.
        file: PathBuf,
    },
    /// Compare the decision procedure against brute-force search over a grid
    /// of pencil pairs of one shape.
    Selftest {
        /// Grid shape, e.g. 2x2 or 3x2.
        #[arg(long, value_parser = parse_shape)]
        shape: (usize, usize),
        /// Prime order of the coefficient field.
        #[arg(long)]
        field: u64,
        /// Check every ordered pair of pencils of the shape.
        #[arg(long)]
        exhaustive: bool,
        /// Check this many sampled pairs instead (default 1000).
        #[arg(long, conflicts_with = "exhaustive")]
        trials: Option<usize>,
        /// Seed for sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_shape(text: &str) -> Result<(usize, usize), String> {
    let (rows, cols) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected ROWSxCOLS, got {text:?}"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad dimension {t:?} in {text:?}"))
    };
    Ok((parse(rows)?, parse(cols)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Invariants { file } => {
            let pencil = io::read_pencil(&file)?;
            let inv = pencil.kronecker_invariants();
            print_json(&serde_json::to_value(InvariantsJson::of(&inv))?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Equiv { a, b } => {
            let pa = io::read_pencil(&a)?;
            let pb = io::read_pencil(&b)?;
            let equivalent = pa.strictly_equivalent(&pb)?;
            print_json(&json!({ "equivalent": equivalent }))?;
            Ok(verdict(equivalent))
        }
        Command::Decide {
            a,
            b,
            witness,
            seed,
        } => {
            let pa = io::read_pencil(&a)?;
            let pb = io::read_pencil(&b)?;
            let outcome = decide(&pa, &pb, seed)?;
            let mut record = json!({
                "exists": outcome.exists,
                "paper_route": outcome.route.label(),
                "evidence": evidence_json(&outcome.evidence),
            });
            if witness {
                if pa.field() == FieldSpec::Rational {
                    return Err(input_error(
                        "witness search requires a small prime field",
                    ));
                }
                let found = if outcome.exists {
                    let (exists, w) = brute_force_decide(&pa, &pb)?;
                    debug_assert!(exists);
                    w
                } else {
                    None
                };
                record["witness"] = match found {
                    Some(w) => serde_json::to_value(PencilJson::of(&w))?,
                    None => serde_json::Value::Null,
                };
            }
            print_json(&record)?;
            Ok(verdict(outcome.exists))
        }
        Command::Oracle { a, b } => {
            let pa = io::read_pencil(&a)?;
            let pb = io::read_pencil(&b)?;
            let (exists, found) = brute_force_decide(&pa, &pb)?;
            let witness = match found {
                Some(w) => serde_json::to_value(PencilJson::of(&w))?,
                None => serde_json::Value::Null,
            };
            print_json(&json!({ "exists": exists, "witness": witness }))?;
            Ok(verdict(exists))
        }
        Command::Realize { file } => {
            let inv = io::read_invariants(&file)?;
            let pencil = inv.realize()?;
            print_json(&serde_json::to_value(PencilJson::of(&pencil))?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest {
            shape: (rows, cols),
            field,
            exhaustive,
            trials,
            seed,
        } => {
            let field_spec = FieldSpec::prime(field)?;
            let (mode, report) = if exhaustive {
                ("exhaustive", exhaustive_agreement(field_spec, rows, cols, seed)?)
            } else {
                let n = trials.unwrap_or(1000);
                ("sampled", sampled_agreement(field_spec, rows, cols, n, seed)?)
            };
            print_json(&json!({
                "shape": format!("{rows}x{cols}"),
                "field": field,
                "mode": mode,
                "pairs": report.pairs,
                "disagreements": report.disagreements,
            }))?;
            Ok(verdict(report.all_agree()))
        }
    }
}

fn verdict(affirmative: bool) -> ExitCode {
    if affirmative {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_json(value: &serde_json::Value) -> Result<(), CliError> {
    use std::io::Write;
    let text = serde_json::to_string_pretty(value)?;
    if let Err(err) = writeln!(std::io::stdout().lock(), "{text}") {
        // A consumer such as `head` closing the pipe early is not an error.
        if err.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        return Err(err.into());
    }
    Ok(())
}

/// The decision's supporting quantities; every unused entry is null. The
/// budget values are small (bounded by the pencil size), so they serialize
/// as plain integers.
fn evidence_json(ev: &pencils::perturb::Evidence) -> serde_json::Value {
    let int = |v: Option<i128>| v.map(|x| x as i64);
    json!({
        "interlacing": ev.interlacing,
        "crossover": ev.crossover.map(|(l, f, fp)| json!([l, f, fp])),
        "gcd_budget": int(ev.gcd_budget),
        "min_capacity": int(ev.min_capacity),
        "lcm_budget": int(ev.lcm_budget),
        "max_demand": int(ev.max_demand),
        "pairs": ev.pairs.map(|(a, b)| json!([a, b])),
        "targets": ev.targets.map(|(x, y)| json!([x as i64, y as i64])),
        "chain_sums": ev.chain_sums.as_ref().map(chain_sums_json),
    })
}

fn chain_sums_json(sums: &DegreeSums) -> serde_json::Value {
    match sums {
        DegreeSums::NoChain => json!({ "kind": "no_chain" }),
        DegreeSums::Finite(set) => json!({ "kind": "finite", "sums": set }),
        DegreeSums::UnboundedFrom(base) => {
            json!({ "kind": "unbounded_from", "base": base })
        }
    }
}
