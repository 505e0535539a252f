//! `gmpn`: command-line access to the computations in the `gmpn` crate.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gmpn::{GroupParams, Limits};

#[derive(Debug, Parser)]
#[command(name = "gmpn", version, about = "Reflection length and Hurwitz orbits in G(m,p,n)")]
struct Cli {
    /// Group parameters `m,p,n` with p dividing m.
    #[arg(long, global = true, value_name = "M,P,N")]
    group: Option<String>,

    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Cap on searched states (group elements, orbit members, closure size).
    #[arg(long, global = true, value_name = "N")]
    max_states: Option<usize>,

    /// Cap on enumerated factorizations.
    #[arg(long, global = true, value_name = "N")]
    max_factorizations: Option<usize>,

    /// Worker threads for parallel sections.
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reflection length and the maximum cycle partitions.
    Reflen { element: String },
    /// Every reflection of the group.
    Reflections,
    /// Every shortest reflection factorization.
    Factorize { element: String },
    /// Number of Hurwitz orbits from the closed formula, with its terms.
    OrbitCount { element: String },
    /// Hurwitz orbits found by exhaustive search.
    OrbitEnumerate { element: String },
    /// Whether two shortest factorizations lie in one Hurwitz orbit.
    Equivalent { first: String, second: String },
    /// A braid word carrying SECOND to FIRST.
    Connect { first: String, second: String },
    /// A standard form in the orbit and the braid word reaching it.
    Normalize { factorization: String },
    /// Structure of the generated subgroup.
    Subgroup { factorization: String },
    /// Quasi-Coxeter conditions.
    Qc { element: String },
    /// Formula-vs-search suites over every element of the group.
    CrossCheck,
}

enum Failure {
    Usage(String),
    Library(gmpn::Error),
}

impl From<gmpn::Error> for Failure {
    fn from(e: gmpn::Error) -> Self {
        Failure::Library(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: cannot configure {k} threads: {e}");
            return ExitCode::from(1);
        }
    }
    let mut limits = Limits::default();
    if let Some(n) = cli.max_states {
        limits.max_states = n;
        limits.max_closure = n;
    }
    if let Some(n) = cli.max_factorizations {
        limits.max_factorizations = n;
    }
    let outcome = match cli.group.as_deref() {
        Some(text) => text
            .parse::<GroupParams>()
            .and_then(|params| commands::run(&cli.command, params, &limits))
            .map_err(Failure::from),
        None => Err(Failure::Usage("--group m,p,n is required".into())),
    };
    match outcome {
        Ok((report, status)) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            } else {
                print!("{}", report.text());
            }
            ExitCode::from(status)
        }
        Err(failure) => {
            let (kind, message, status) = match failure {
                Failure::Usage(m) => ("usage", m, 1),
                Failure::Library(e) if e.is_limit() => ("limit", e.to_string(), 2),
                Failure::Library(e) => ("error", e.to_string(), 1),
            };
            if cli.json {
                let body = serde_json::json!({ "error": { "kind": kind, "message": message } });
                println!("{}", serde_json::to_string_pretty(&body).expect("json value serializes"));
            }
            eprintln!("error: {message}");
            ExitCode::from(status)
        }
    }
}
