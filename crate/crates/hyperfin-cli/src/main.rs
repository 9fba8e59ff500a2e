//! Command-line front end for the `hyperfin` library.
//!
//! Exit codes: 0 success (including legitimate NOT-FOUND outcomes), 2 for
//! missing or malformed input, 3 for violated invariants and infeasible
//! configurations.

mod args;
mod commands;
mod error;
mod inputs;
mod report;

use clap::Parser;

use args::{Cli, Command, Globals};

fn main() {
    let Cli {
        report,
        csv,
        seed,
        command,
    } = Cli::parse();
    let globals = Globals { report, csv, seed };
    let outcome = match &command {
        Command::Color(a) => commands::color(a, &globals),
        Command::Covers(a) => commands::covers(a, &globals),
        Command::Hierarchy(a) => commands::hierarchy(a, &globals),
        Command::Reduce(a) => commands::reduce(a, &globals),
        Command::Verify(a) => commands::verify(a, &globals),
        Command::Ellentuck(a) => commands::ellentuck(a, &globals),
        Command::Gen(a) => commands::gen(a, &globals),
    };
    if let Err(e) = outcome {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
