use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gaussia::figures::{figure_table, Figure};
use gaussia::renyi::DEFAULT_BUDGET;
use gaussia::report::analyze;
use gaussia::sweep::{run_sweep, sweep_table, OutputFormat, SweepSpec};
use gaussia::validate::{Grid, Validator};
use gaussia::{Error, FrameScenario};

#[derive(Parser)]
#[command(name = "gaussia", version, about = "Rényi-2 correlations of field modes seen by accelerated observers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full correlation report for one scenario (JSON file, or '-' for stdin).
    Analyze {
        #[arg(long)]
        scenario: String,
    },
    /// One-parameter sweep described by a JSON spec.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Writes the data behind a figure as CSV.
    Figure {
        #[arg(long, value_parser = ["fig2a", "fig2b", "fig3"])]
        which: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-checks against the closed forms.
    Validate {
        #[arg(long, default_value = "coarse", value_parser = ["coarse", "fine"])]
        grid: String,
    },
}

enum Failure {
    Input(String),
    Numeric(Error),
    Output(String),
    Validation(Vec<String>),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Input(_) => 2,
            Failure::Numeric(_) => 3,
            Failure::Output(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "invalid input: {m}"),
            Failure::Numeric(e) => write!(f, "numeric failure: {e}"),
            Failure::Output(m) => write!(f, "cannot write output: {m}"),
            Failure::Validation(names) => write!(f, "validation failed: {}", names.join(", ")),
        }
    }
}

/// Scenario and spec problems are the caller's; everything else is numeric.
fn classify(e: Error) -> Failure {
    match e {
        Error::Json(_) | Error::InvalidParameter { .. } | Error::Unsupported(_) => Failure::Input(e.to_string()),
        Error::Io(_) => Failure::Output(e.to_string()),
        other => Failure::Numeric(other),
    }
}

fn read_input(source: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if source == "-" {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        File::open(source).and_then(|mut f| f.read_to_string(&mut text)).map(|_| ())
    };
    res.map_err(|e| Failure::Input(format!("{source}: {e}")))?;
    Ok(text)
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::Output(format!("{}: {e}", path.display())))
}

fn finish(mut w: impl Write, path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    w.write_all(bytes)
        .and_then(|_| w.flush())
        .map_err(|e| Failure::Output(format!("{}: {e}", path.display())))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("GAUSSIA_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("GAUSSIA_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(e.to_string()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Analyze { scenario } => {
            let text = read_input(&scenario)?;
            let sc: FrameScenario = serde_json::from_str(&text).map_err(|e| Failure::Input(e.to_string()))?;
            sc.validate().map_err(classify)?;
            let report = analyze(&sc, DEFAULT_BUDGET).map_err(classify)?;
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            // Ignores a closed pipe.
            let _ = writeln!(io::stdout().lock(), "{json}");
        }
        Command::Sweep { spec } => {
            let text = read_input(&spec.to_string_lossy())?;
            let spec: SweepSpec = serde_json::from_str(&text).map_err(|e| Failure::Input(e.to_string()))?;
            spec.validate().map_err(classify)?;
            let out = create(&spec.output)?;
            let rows = run_sweep(&spec, DEFAULT_BUDGET).map_err(classify)?;
            let bytes = match spec.format {
                OutputFormat::Csv => sweep_table(&spec, &rows).to_csv().into_bytes(),
                OutputFormat::Json => {
                    let mut v = serde_json::to_vec_pretty(&rows).expect("rows serialize");
                    v.push(b'\n');
                    v
                }
            };
            finish(out, &spec.output, &bytes)?;
        }
        Command::Figure { which, out } => {
            let figure: Figure = which.parse().map_err(classify)?;
            let w = create(&out)?;
            let table = figure_table(figure, DEFAULT_BUDGET).map_err(classify)?;
            finish(w, &out, table.to_csv().as_bytes())?;
        }
        Command::Validate { grid } => {
            let grid: Grid = grid.parse().map_err(classify)?;
            let checks = Validator::new(grid).run().map_err(Failure::Numeric)?;
            for c in &checks {
                println!("{c}");
            }
            let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
            if !failed.is_empty() {
                return Err(Failure::Validation(failed));
            }
            println!("all {} checks passed", checks.len());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("gaussia: {f}");
            ExitCode::from(f.code())
        }
    }
}
