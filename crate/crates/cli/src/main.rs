use clap::Parser;
use seba_cli::{run, threads_from_env, Cli};

fn main() {
    let cli = Cli::parse();
    let outcome = threads_from_env().and_then(|threads| {
        if let Some(n) = threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| seba_cli::CliError::Usage(e.to_string()))?;
        }
        run(&cli)
    });
    if let Err(e) = outcome {
        // a closed downstream pipe is not a failure
        if let seba_cli::CliError::Io(io) = &e {
            if io.kind() == std::io::ErrorKind::BrokenPipe {
                return;
            }
        }
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
