use std::process::ExitCode;

fn main() -> ExitCode {
    psc_cli::run_from(std::env::args_os())
}
