use std::process::ExitCode;

fn main() -> ExitCode {
    qhodge_cli::main_with(std::env::args_os())
}
