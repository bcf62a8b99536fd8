use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = sfstri::cli::run(std::env::args_os());
    print!("{}", outcome.text);
    ExitCode::from(outcome.code as u8)
}
