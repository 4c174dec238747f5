use std::process::ExitCode;

fn main() -> ExitCode {
    geoline::run(std::env::args_os())
}
