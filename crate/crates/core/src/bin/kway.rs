use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = kway::cli::run_from_args(std::env::args_os());
    if let Some(msg) = &outcome.message {
        eprintln!("{}", msg.trim_end());
    }
    let written = match &outcome.out {
        Some(path) => std::fs::write(path, &outcome.output),
        None => std::io::stdout().write_all(outcome.output.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("kway: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.exit_code as u8)
}
