mod commands;
mod input;
mod selftest;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use commands::Output;
use input::CliError;

/// Hurwitz action on reflection factorizations in Coxeter groups.
///
/// Factorizations are JSON lists of reflection words, e.g. `[[1], [2, 1, 2]]`.
/// Results are printed as JSON on standard output.
#[derive(Parser)]
#[command(name = "hurwitz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conjugacy classes of the simple reflections.
    Classes {
        #[arg(long)]
        diagram: String,
    },
    /// Compare class multisets of two factorizations of a Coxeter element.
    Decide {
        #[arg(long)]
        diagram: String,
        /// Order of the simple generators in the Coxeter element, e.g. "1 2 3".
        #[arg(long)]
        coxeter: Option<String>,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Decide and, when equivalent, print a verified braid word from f to g.
    Connect {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        coxeter: Option<String>,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Rewrite a factorization into an increasing core followed by equal pairs.
    Normalize {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        f: String,
    },
    /// Breadth-first Hurwitz orbit of a factorization.
    Orbit {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        /// Include every visited state in the output.
        #[arg(long)]
        dump: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Replay a braid word on f and compare with an expected factorization.
    Verify {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        f: String,
        /// `[1, -2]`, `{"braid": [...]}` or the output of `connect`.
        #[arg(long)]
        braid: String,
        #[arg(long)]
        expect: String,
    },
    /// Check the library against brute force on small finite groups.
    Selftest,
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Classes { diagram } => commands::classes(&diagram),
        Command::Decide {
            diagram,
            coxeter,
            f,
            g,
        } => commands::decide_cmd(&diagram, coxeter.as_deref(), &f, &g),
        Command::Connect {
            diagram,
            coxeter,
            f,
            g,
        } => commands::connect_cmd(&diagram, coxeter.as_deref(), &f, &g),
        Command::Normalize { diagram, f } => commands::normalize_cmd(&diagram, &f),
        Command::Orbit {
            diagram,
            f,
            cap,
            dump,
            threads,
        } => commands::orbit_cmd(&diagram, &f, cap, dump, threads),
        Command::Verify {
            diagram,
            f,
            braid,
            expect,
        } => commands::verify_cmd(&diagram, &f, &braid, &expect),
        Command::Selftest => {
            let mut reports = Vec::new();
            for (name, d) in selftest::systems() {
                reports.push(
                    selftest::check(name, d)
                        .map_err(|e| CliError::from_core(e, json!({ "system": name })))?,
                );
            }
            let passed = reports.iter().all(selftest::SystemReport::passed);
            Ok(Output {
                json: json!({ "passed": passed, "systems": reports }),
                exit: if passed { 0 } else { 1 },
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json, exit) = match run(cli) {
        Ok(out) => (out.json, out.exit),
        Err(e) => (serde_json::to_value(&e).expect("error serializes"), e.exit),
    };
    let text = serde_json::to_string_pretty(&json).expect("json output");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(exit as u8)
}
