use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(projkernel::cli::run(std::env::args_os()))
}
