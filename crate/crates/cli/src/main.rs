use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    match prodsets::run(std::env::args_os()) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            if out.code == prodsets::EXIT_FALSIFIED {
                eprintln!("falsification: report shows a violated check");
            }
            ExitCode::from(out.code as u8)
        }
        Err(prodsets::CliError::Arguments(msg)) => {
            eprint!("{msg}");
            ExitCode::from(prodsets::EXIT_USAGE as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
