use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use orthomod_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(report) => {
            if cli.global.json {
                print!("{}", report.to_json_string());
            } else {
                print!("{}", report.text);
                eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
