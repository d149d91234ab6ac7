use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (out, status) = kodaira_stab::cli::run_from_args(std::env::args_os());
    // a closed pipe (e.g. `| head`) is not an error worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{out}");
    ExitCode::from(status as u8)
}
