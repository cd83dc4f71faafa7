use clap::Parser;
use planck_cutoff::cli::{self, OutputFormat};
use std::path::PathBuf;
use std::process::ExitCode;

/// Planck-cutoff electrodynamics tables: regularized Coulomb kernels,
/// zero-point quantities, photon-gas equations of state and classical
/// field-mode trajectories.
#[derive(Parser)]
#[command(name = cli::TOOL_NAME, version = cli::TOOL_VERSION)]
struct Args {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,

    /// Output file; overrides `output.path` from the configuration.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Output format; overrides `output.format` from the configuration.
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,

    /// RNG seed; overrides `seed` from the configuration.
    #[arg(long)]
    seed: Option<u64>,

    /// Fine-structure constant; overrides `alpha` from the configuration.
    #[arg(long)]
    alpha: Option<f64>,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    OutputFormat::parse(s).ok_or_else(|| format!("expected `csv` or `json`, got `{s}`"))
}

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

fn main() -> ExitCode {
    let args = Args::parse();

    let text = match std::fs::read_to_string(&args.config) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.config.display());
            return ExitCode::from(EXIT_CONFIG);
        }
    };

    let mut config = match cli::validate(&text) {
        Ok(config) => config,
        Err(errors) => {
            eprintln!("error: invalid configuration:");
            for e in &errors {
                eprintln!("  - {e}");
            }
            return ExitCode::from(EXIT_CONFIG);
        }
    };

    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(alpha) = args.alpha {
        config.alpha = alpha;
        if let Err(errors) = cli::validate(&config.to_value().to_string()) {
            for e in &errors {
                eprintln!("error: {e}");
            }
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    if let Some(path) = &args.output {
        config.output.path = Some(path.to_string_lossy().into_owned());
    }
    if let Some(format) = args.format {
        config.output.format = format;
    }

    let path = match &config.output.path {
        Some(path) => PathBuf::from(path),
        None => {
            eprintln!("error: no output path (set output.path in the config or pass --output)");
            return ExitCode::from(EXIT_CONFIG);
        }
    };

    let table = match cli::run(&config) {
        Ok(table) => table,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_NUMERIC);
        }
    };

    let rendered = table.render(config.output.format);
    if let Err(e) = std::fs::write(&path, rendered) {
        eprintln!("error: cannot write {}: {e}", path.display());
        return ExitCode::from(EXIT_NUMERIC);
    }
    println!("{}", path.display());
    ExitCode::SUCCESS
}
