use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(curvecx::cli::run(std::env::args_os()) as u8)
}
