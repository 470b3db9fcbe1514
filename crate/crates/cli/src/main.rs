use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::LazyLock;

use clap::Parser;
use ptlat_cli::commands::CSV_SCHEMAS;
use ptlat_cli::{CliError, Command, ConfigError, parse_config, run};

static AFTER_HELP: LazyLock<String> = LazyLock::new(|| {
    let mut s = String::from(
        "Outputs go to <out>/<command>.csv and <out>/<command>.json. CSV files are UTF-8 with a\n\
         header row and LF line endings; floats carry 17 significant digits and site/state\n\
         indices are 1-based. The JSON summary is {\"config\", \"result\", \"version\"}; its config\n\
         block can be passed back through --config to reproduce the run.\n\nCSV columns:\n",
    );
    for (file, cols) in CSV_SCHEMAS {
        s.push_str(&format!("  {file:<24}{}\n", cols.join(",")));
    }
    s.push_str("\nOn failure a JSON error object is printed to stderr and the exit status is nonzero\n(2 for invalid input, 1 otherwise).");
    s
});

#[derive(Debug, Parser)]
#[command(name = "ptlat", version, about = "Spectra and PT-breaking thresholds of non-Hermitian Aubry-Andre chains")]
#[command(after_help = AFTER_HELP.as_str())]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// TOML config, or a JSON summary from an earlier run.
    #[arg(long)]
    config: PathBuf,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Worker threads for grid sweeps (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

fn execute(args: &Args) -> Result<Vec<PathBuf>, CliError> {
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(ConfigError::Syntax(format!("--threads: {e}"))))?;
    }
    let text = std::fs::read_to_string(&args.config).map_err(|source| CliError::Io {
        path: args.config.clone(),
        source,
    })?;
    let cfg = parse_config(&text)?;
    Ok(run(args.command, &cfg, &args.out)?.files)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
