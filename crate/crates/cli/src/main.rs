use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(planeflow_cli::run(std::env::args_os()) as u8)
}
