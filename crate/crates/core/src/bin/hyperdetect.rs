use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = hyperdetect::cli::run(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
