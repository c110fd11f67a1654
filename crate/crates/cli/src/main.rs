use std::io::Write;
use std::process::ExitCode;

use arcalg_cli::{init_threads, run, Cli, CliError};
use clap::Parser;

/// Ignores a closed stdout, as when piped into `head`.
fn print(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{}", s.trim_end());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|()| run(&cli));
    match result {
        Ok(out) => {
            print(out.render(cli.out));
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Failed(out) = &e {
                print(out.render(cli.out));
            }
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
