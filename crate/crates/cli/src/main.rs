use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use purimetrics::args::Cli;
use purimetrics::commands::run;
use purimetrics::io::tolerances_from_env;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match tolerances_from_env() {
        Ok(tol) => tol,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &tol, &mut out).and_then(|()| Ok(out.flush()?)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
