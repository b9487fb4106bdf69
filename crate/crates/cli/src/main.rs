use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use setfam_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.data),
        None => std::io::stdout().write_all(&out.data),
    };
    if let Err(e) = written {
        eprintln!("error: writing output: {e}");
        return ExitCode::from(2);
    }
    for note in &out.notes {
        eprintln!("{note}");
    }
    ExitCode::from(out.code as u8)
}
