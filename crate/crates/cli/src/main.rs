use std::process::ExitCode;

use chainent_cli::config::cli;
use chainent_cli::{parse_args, run, write_outputs};
use clap::error::ErrorKind;

fn main() -> ExitCode {
    let args: Vec<_> = std::env::args_os().collect();
    if let Err(e) = cli().try_get_matches_from(&args) {
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            e.exit();
        }
    }
    let cfg = match parse_args(&args) {
        Ok(c) => c,
        Err(e) => {
            let msg = e.0.trim_end();
            if msg.starts_with("error:") {
                eprintln!("{msg}");
            } else {
                eprintln!("error: {msg}");
            }
            return ExitCode::from(2);
        }
    };
    let result = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = write_outputs(&cfg, &result) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let errors = result.output.table.error_count();
    if errors > 0 {
        eprintln!("{errors} of {} rows reported errors", result.output.table.rows.len());
    }
    if result.total_failure() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
