use std::process::ExitCode;

fn main() -> ExitCode {
    enumstat::cli::run()
}
