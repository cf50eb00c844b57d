use std::process::ExitCode;

fn main() -> ExitCode {
    eon::cli::main_with(std::env::args_os())
}
