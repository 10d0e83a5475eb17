use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cmd = match btugirth_cli::parse_args(std::env::args_os().skip(1)) {
        Ok(cmd) => cmd,
        Err(e) => e.exit(),
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match btugirth_cli::run(&cmd, &mut out).and_then(|()| Ok(out.flush()?)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
