use std::fs;
use std::process::ExitCode;

use clap::Parser;
use dissident::cli::{render, run, Cli, EXIT_PARSE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let text = render(&outcome.report);
    print!("{text}");
    let mut code = outcome.code;
    if let Some(path) = &cli.global.json_out {
        if let Err(e) = fs::write(path, &text) {
            eprintln!("dissident: {}: {e}", path.display());
            code = code.max(EXIT_PARSE);
        }
    }
    ExitCode::from(code as u8)
}
