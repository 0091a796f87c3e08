use std::io::Read;
use std::process::ExitCode;

use cdga_cli::app::{EXIT_INTERNAL, EXIT_INVALID};
use cdga_cli::{parse, run, Cli};
use clap::Parser;

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let path = &cli.command.options().file;
    let text = match read_input(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{path}: {e}");
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    let doc = match parse(&text) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("{path}: {e}");
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    match run(&cli.command, &doc) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", f.message);
            if f.code == EXIT_INTERNAL {
                eprintln!("--- reproduction ---\n{:?}\n{doc}", cli.command);
            }
            ExitCode::from(f.code as u8)
        }
    }
}
