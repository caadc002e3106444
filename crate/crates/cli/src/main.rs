use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wexp_core::commands::{
    self, render_density, render_lattice, render_report, render_survey, EXIT_INPUT, EXIT_UNKNOWN,
};
use wexp_core::{Caps, Error};

/// Exponential and weakly exponential subgroups of finite permutation groups.
#[derive(Parser)]
#[command(name = "wexp", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest group order for full subgroup-lattice enumeration.
    #[arg(long, global = true)]
    lattice_cap: Option<u128>,
    /// Largest group order whose elements are materialised.
    #[arg(long, global = true)]
    element_cap: Option<u128>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one predicate on a group.
    Check {
        /// S:n, A:n, D:n, C:n, PSL2:q, AGL:n,p, products joined by '*', or a file.
        #[arg(long)]
        group: String,
        /// exponential, exp-trivial, exp-simple, weakly-exponential,
        /// wexp-solvable, minimal-wexp-nonsolvable, exponent, solvable, nilpotent.
        #[arg(long)]
        predicate: String,
        /// Subgroup generators in cycle notation, separated by ',' or ';'.
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Compare the mod-120 classifier with computation for PSL(2,q), q <= qmax.
    SurveyPsl {
        #[arg(long)]
        qmax: u64,
        /// Groups up to this order are decided by full lattice enumeration.
        #[arg(long, default_value_t = 5000)]
        full_cap: u128,
    },
    /// Count primes p < n with PSL(2,p) wexp-solvable, at log checkpoints.
    Density {
        #[arg(long)]
        nmax: u64,
    },
    /// List subgroup classes, normal subgroups, maximal classes, or element classes.
    Lattice {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "subgroups")]
        what: String,
    },
    /// Re-check a certificate (or a report containing one) from a JSON file.
    VerifyCertificate {
        /// Path to the JSON file, or '-' for stdin.
        path: String,
    },
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if e.is_over_cap() { EXIT_UNKNOWN } else { EXIT_INPUT } as u8)
}

fn emit<T: serde::Serialize>(json: bool, value: &T, text: impl FnOnce(&T) -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serialisable"));
    } else {
        print!("{}", text(value));
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut caps = Caps::default();
    if let Some(c) = cli.lattice_cap {
        caps.lattice_cap = c;
    }
    if let Some(c) = cli.element_cap {
        caps.element_cap = c;
    }
    match cli.command {
        Command::Check {
            group,
            predicate,
            subgroup,
        } => match commands::run_check(&group, &predicate, subgroup.as_deref(), &caps) {
            Ok((report, code)) => {
                emit(cli.json, &report, render_report);
                ExitCode::from(code as u8)
            }
            Err(e) => fail(&e),
        },
        Command::SurveyPsl { qmax, full_cap } => match commands::run_survey_psl(qmax, full_cap, &caps) {
            Ok((report, code)) => {
                emit(cli.json, &report, render_survey);
                ExitCode::from(code as u8)
            }
            Err(e) => fail(&e),
        },
        Command::Density { nmax } => match commands::run_density(nmax, &caps) {
            Ok(report) => {
                emit(cli.json, &report, render_density);
                ExitCode::SUCCESS
            }
            Err(e) => fail(&e),
        },
        Command::Lattice { group, what } => match commands::run_lattice(&group, &what, &caps) {
            Ok(report) => {
                emit(cli.json, &report, render_lattice);
                ExitCode::SUCCESS
            }
            Err(e) => fail(&e),
        },
        Command::VerifyCertificate { path } => {
            let text = if path == "-" {
                std::io::read_to_string(std::io::stdin())
            } else {
                std::fs::read_to_string(&path)
            };
            let text = match text {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {path}: {e}");
                    return ExitCode::from(EXIT_INPUT as u8);
                }
            };
            match commands::verify_document(&text) {
                Ok(lines) => {
                    for l in lines {
                        println!("ok: {l}");
                    }
                    ExitCode::SUCCESS
                }
                Err(msg) => {
                    eprintln!("rejected: {msg}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
