use std::process;

use clap::Parser;
use nullsum_cli::{run, Cli, CliError, Command, Format};

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} workers: {e}");
            process::exit(1);
        }
    }
    let format = cli.format.unwrap_or(match cli.command {
        Command::Table { .. } => Format::Text,
        _ => Format::Json,
    });
    let (doc, code) = match run(&cli) {
        Ok(doc) => (Some(doc), 0),
        Err(CliError::Conjecture { message, document }) => {
            eprintln!("!!! CONJECTURE-RELEVANT FAILURE: {message}");
            (document.map(|d| *d), 4)
        }
        Err(e) => {
            eprintln!("error: {e}");
            process::exit(e.exit_code());
        }
    };
    if let Some(doc) = doc {
        match doc.render(format) {
            Ok(text) => print!("{text}"),
            Err(e) => {
                eprintln!("error: {e}");
                process::exit(2);
            }
        }
    }
    process::exit(code);
}
