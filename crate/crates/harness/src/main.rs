use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(trilat_harness::cli::run(std::env::args_os()))
}
