use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let tolerance = std::env::var(qcm::cli::TOLERANCE_ENV).ok();
    let out = qcm::cli::main_with(std::env::args_os(), tolerance.as_deref(), &mut std::io::stdin().lock());
    // Ignore write failures such as a closed pipe.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.status as u8)
}
