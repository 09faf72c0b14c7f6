use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(chowbez_cli::cli::run() as u8)
}
