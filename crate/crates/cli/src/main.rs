use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use nullca_cli::{bench, examples, InputError, EXIT_FAILURE, EXIT_IRREVERSIBLE, EXIT_OK};
use nullca_core::ca::matrix_to_text;
use nullca_core::spectral::{self, JordanReport};
use nullca_core::structmat::DEFAULT_SIZE_CAP;

/// Reversibility, inverses and simulation for linear cellular automata over
/// Z_p with null boundary.
///
/// Rule files are JSON objects {"p", "dims", "c", "eta", "axes"} where each
/// axis is {"ell": [..], "r": [..]} with exactly eta coefficients per side;
/// ell[q-1] weighs the neighbor q cells back along the axis, r[q-1] the one q
/// cells ahead, and c the cell itself. Pattern files start with the header
/// `d m_1 .. m_d p` followed by the cell values, first axis fastest. Matrix
/// files start with `rows cols p` followed by one row per line. Images are
/// plain PGM (P2), one per slice along the third axis.
///
/// Exit codes: 0 success or reversible, 10 irreversible, 2 invalid input,
/// 1 other failures.
#[derive(Parser)]
#[command(name = "nullca", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide reversibility and print the spectral report as JSON.
    Check { rule: PathBuf },
    /// Compute the inverse transition matrix and write it to OUT.
    Invert {
        rule: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Largest number of cells accepted.
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
    },
    /// Run the automaton forward.
    Evolve {
        rule: PathBuf,
        pattern: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(short, long)]
        out: PathBuf,
        /// Also write PGM slices of the result into this directory.
        #[arg(long)]
        pgm: Option<PathBuf>,
    },
    /// Run the automaton backward through its inverse.
    Reverse {
        rule: PathBuf,
        pattern: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(short, long)]
        out: PathBuf,
        /// Inverse matrix file from `invert`; computed when absent.
        #[arg(long)]
        inverse: Option<PathBuf>,
        #[arg(long)]
        pgm: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
    },
    /// Print the splitting field and per-axis roots as JSON.
    Roots { rule: PathBuf },
    /// Print the Jordan block structure as JSON.
    Jordan {
        rule: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
    },
    /// Recompute the reference results and compare them with the golden files.
    Examples {
        /// List example IDs and exit.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        golden_dir: Option<PathBuf>,
        /// Run only these IDs.
        ids: Vec<String>,
    },
    /// Time the structured check against dense elimination on m x m x m cubes.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 4, 6, 8, 10, 12])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        p: u64,
        #[arg(long, default_value_t = 5)]
        runs: usize,
        /// Largest matrix order given to the dense baseline.
        #[arg(long, default_value_t = bench::DEFAULT_DENSE_CAP)]
        dense_cap: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(value)?))
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check { rule } => {
            let rule = nullca_cli::load_rule(&rule)?;
            let report = nullca_cli::check(&rule)?;
            print_json(&report)?;
            Ok(if report.reversible { EXIT_OK } else { EXIT_IRREVERSIBLE })
        }
        Command::Invert { rule, out, cap } => {
            let rule = nullca_cli::load_rule(&rule)?;
            let (inv, report) = nullca_cli::invert(&rule, cap)?;
            nullca_cli::write_atomic(&out, matrix_to_text(&inv).as_bytes())?;
            print_json(&report)?;
            Ok(EXIT_OK)
        }
        Command::Evolve {
            rule,
            pattern,
            steps,
            out,
            pgm,
        } => {
            let rule = nullca_cli::load_rule(&rule)?;
            let x = nullca_cli::load_pattern(&pattern)?;
            let y = nullca_cli::evolve(&rule, &x, steps)?;
            write_pattern(&out, pgm, &y)?;
            Ok(EXIT_OK)
        }
        Command::Reverse {
            rule,
            pattern,
            steps,
            out,
            inverse,
            pgm,
            cap,
        } => {
            let rule = nullca_cli::load_rule(&rule)?;
            let x = nullca_cli::load_pattern(&pattern)?;
            let inv = inverse.map(|p| nullca_cli::load_matrix(&p)).transpose()?;
            let y = nullca_cli::reverse(&rule, &x, steps, inv, cap)?;
            write_pattern(&out, pgm, &y)?;
            Ok(EXIT_OK)
        }
        Command::Roots { rule } => {
            let rule = nullca_cli::load_rule(&rule)?;
            print_json(&nullca_cli::check(&rule)?)?;
            Ok(EXIT_OK)
        }
        Command::Jordan { rule, cap } => {
            let rule = nullca_cli::load_rule(&rule)?;
            if rule.size() > cap {
                return Err(InputError(format!("{} cells exceed the cap of {cap}", rule.size())).into());
            }
            let gj = spectral::generalized_jordan(&rule)?;
            print_json(&JordanReport::new(&gj))?;
            Ok(EXIT_OK)
        }
        Command::Examples { list, golden_dir, ids } => {
            let catalog = examples::catalog();
            if list {
                for e in &catalog {
                    println!("{:<34} {}", e.id, e.description);
                }
                return Ok(EXIT_OK);
            }
            if let Some(bad) = ids.iter().find(|id| !catalog.iter().any(|e| e.id == id.as_str())) {
                return Err(InputError(format!("unknown example {bad:?}")).into());
            }
            let dir = golden_dir.unwrap_or_else(examples::default_golden_dir);
            let mut failed = 0;
            for (id, outcome) in examples::run_all(&dir, &ids) {
                match outcome {
                    Ok(()) => println!("PASS {id}"),
                    Err(msg) => {
                        failed += 1;
                        println!("FAIL {id}: {msg}");
                    }
                }
            }
            Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Bench {
            sizes,
            p,
            runs,
            dense_cap,
            out,
        } => {
            let rows = bench::run(&sizes, p, runs, dense_cap)?;
            let csv = bench::to_csv(&rows);
            match out {
                Some(path) => nullca_cli::write_atomic(&path, csv.as_bytes())?,
                None => emit(&csv)?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn write_pattern(out: &std::path::Path, pgm: Option<PathBuf>, x: &nullca_core::ca::Pattern) -> Result<()> {
    let mut files = vec![(out.to_path_buf(), x.to_text())];
    if let Some(dir) = pgm {
        files.extend(nullca_cli::pgm_files(&dir, x)?);
    }
    nullca_cli::write_all_atomic(&files)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(nullca_cli::exit_code(&err))
        }
    }
}
