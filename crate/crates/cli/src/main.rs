use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use jacring_cli::args::Cli;
use jacring_cli::error::{CliError, CliResult, EXIT_INTERNAL, EXIT_PARSE};
use jacring_cli::{execute, render_csv};

fn run(cli: &Cli) -> CliResult<()> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let rec = execute(cli)?;
    let json = serde_json::to_string_pretty(&rec).map_err(|e| CliError::Internal(e.to_string()))?;
    if let Some(path) = &cli.output {
        fs::write(path, format!("{json}\n")).map_err(|e| CliError::io(path, e))?;
    }
    let text = if cli.csv {
        render_csv(&rec.payload)?
    } else {
        format!("{json}\n")
    };
    match std::io::stdout().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::io("<stdout>", e)),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|info| {
        eprintln!("jacring: internal error: {info}");
        std::process::exit(EXIT_INTERNAL);
    }));
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("jacring: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
