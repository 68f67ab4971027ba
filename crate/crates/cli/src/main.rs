use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};

use antibunch::lindblad::FockPolicy;
use antibunch::sweep::{
    figure_preset, load_config, load_config_file, preset_description, run_sweep_with_jobs, to_csv, to_json, Engine,
    OutputFormat, PRESET_NAMES,
};
use antibunch::Error;

/// Cells may be flagged up to this fraction before the run counts as a numerical failure.
const MAX_FLAGGED_FRACTION: f64 = 0.1;

const EXIT_IO: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(name = "antibunch", version, about = "Photon statistics of a driven two-atom Rydberg cavity")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate observables over a 1-D or 2-D parameter grid.
    Sweep(SweepArgs),
    /// List figure presets, or print one as JSON.
    Presets {
        #[arg(long, value_name = "NAME")]
        show: Option<String>,
    },
}

#[derive(clap::Args)]
struct SweepArgs {
    /// TOML sweep description.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Start from a figure preset; keys in --config overlay it.
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Defaults to the --out extension, else csv.
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
    /// Worker threads; all cores when absent.
    #[arg(long, value_name = "K")]
    jobs: Option<usize>,
    #[arg(long, value_parser = parse_engine)]
    engine: Option<Engine>,
    /// Fixed Fock cutoff N, or "auto".
    #[arg(long, value_name = "N|auto", value_parser = parse_fock)]
    fock: Option<FockPolicy>,
    /// Record the wall-clock time in the JSON metadata.
    #[arg(long)]
    timestamp: bool,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_fock(s: &str) -> Result<FockPolicy, String> {
    if s == "auto" {
        return Ok(FockPolicy::default());
    }
    s.parse()
        .map(FockPolicy::Fixed)
        .map_err(|_| format!("expected a cutoff or \"auto\", got '{s}'"))
}

enum Failure {
    Config(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(e) => Failure::Io(e.to_string()),
            other => Failure::Config(other.to_string()),
        }
    }
}

fn infer_format(out: Option<&Path>) -> OutputFormat {
    match out.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("json") => OutputFormat::Json,
        _ => OutputFormat::Csv,
    }
}

fn sweep(args: SweepArgs) -> Result<ExitCode, Failure> {
    let mut spec = match (&args.config, &args.preset) {
        (Some(path), preset) => load_config_file(path, preset.as_deref())?,
        (None, Some(name)) => load_config("", Some(name))?,
        (None, None) => return Err(Failure::Config("sweep needs --config or --preset".into())),
    };
    if let Some(engine) = args.engine {
        spec = spec.with_engine(engine);
    }
    if let Some(fock) = args.fock {
        spec.fock = fock;
    }
    if args.jobs == Some(0) {
        return Err(Failure::Config("--jobs must be at least 1".into()));
    }

    let mut result = run_sweep_with_jobs(&spec, args.jobs)?;
    if args.timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        result = result.with_timestamp(format!("unix:{secs}"));
    }

    let format = args.format.unwrap_or_else(|| infer_format(args.out.as_deref()));
    let text = match format {
        OutputFormat::Csv => to_csv(&result),
        OutputFormat::Json => to_json(&result)?,
    };
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string()))?,
    }

    let fraction = result.flagged_fraction();
    if fraction > MAX_FLAGGED_FRACTION {
        eprintln!(
            "antibunch: {} of {} points flagged ({:.1}%)",
            result.flagged_count(),
            result.shape().0 * result.shape().1,
            100.0 * fraction
        );
        return Ok(ExitCode::from(EXIT_NUMERICAL));
    }
    Ok(ExitCode::SUCCESS)
}

fn presets(show: Option<String>) -> Result<ExitCode, Failure> {
    match show {
        Some(name) => {
            let spec = figure_preset(&name)?;
            let json = serde_json::to_string_pretty(&spec).map_err(|e| Failure::Config(e.to_string()))?;
            println!("{json}");
        }
        None => {
            for name in PRESET_NAMES {
                println!("{name:<6}  {}", preset_description(name).unwrap_or_default());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Presets { show } => presets(show),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Config(msg)) => {
            eprintln!("antibunch: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("antibunch: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}
