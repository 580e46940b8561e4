use std::process::ExitCode;

fn main() -> ExitCode {
    let base = std::env::current_dir().unwrap_or_else(|_| ".".into());
    match branchpoint::cli::run_args(std::env::args_os(), &base) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
